import io

import pytest

from nbmine import (
    GraphParseError,
    GraphValidationError,
    LabeledGraph,
    intersect,
    load_graph,
    vertices_with_label,
    write_graph,
)


def load(vl: str, ed: str) -> LabeledGraph:
    return load_graph(io.StringIO(vl), io.StringIO(ed))


def test_minimal_graph():
    g = load("a1\tAuthor\n", "a1\tp1\twrites\n")
    assert g.vertex_count == 2
    assert sum(len(ls) for ls in g.vertex_labels) == 1
    assert len(g.edges) == 1
    assert g.size == 2


def test_duplicate_edge_collapses():
    g = load("a1\tAuthor\n", "a1\tp1\twrites\na1\tp1\twrites\n")
    assert len(g.edges) == 1


def test_parallel_edges_with_different_labels_kept():
    g = load("", "a\tb\tx\na\tb\ty\nb\ta\tx\n")
    assert len(g.edges) == 3


def test_loop_is_rejected_with_line_number():
    with pytest.raises(GraphValidationError) as info:
        load("", "a1\tp1\twrites\np1\tp1\tcites\n")
    assert info.value.line == 2
    assert ":2:" in str(info.value)


def test_bad_field_count_is_a_parse_error():
    with pytest.raises(GraphParseError) as info:
        load("a1\tAuthor\textra\n", "")
    assert info.value.line == 1


def test_blank_and_comment_lines_skipped():
    g = load("# header\n\na1\tAuthor\n", "\n# c\na1\tp1\twrites\n")
    assert g.vertex_count == 2


def test_multi_label_vertex():
    g = load("v\tA\nv\tB\n", "")
    assert len(g.vertex_labels[0]) == 2


def test_ids_follow_first_appearance():
    g = load("b\tX\na\tX\n", "c\tb\te\n")
    assert [g.vertex_names.name(i) for i in range(3)] == ["b", "a", "c"]


def test_vertices_with_label(toy, tp):
    assert vertices_with_label(toy, "Author") == tp.vids("a1", "a2", "a3", "a4")
    assert vertices_with_label(toy, "Paper") == tp.vids(*[f"p{i}" for i in range(1, 9)])
    assert vertices_with_label(toy, "Venue") == ()
    assert vertices_with_label(toy, tp.AUTHOR) == tp.vids("a1", "a2", "a3", "a4")


def test_label_index_matches_labels(toy):
    for l, vs in toy.label_index.items():
        assert list(vs) == sorted(v for v in range(toy.vertex_count) if l in toy.vertex_labels[v])


def test_intersect_examples():
    assert intersect([0, 1, 2], [0, 1, 2, 3]) == (0, 1, 2)
    assert intersect([1, 5], []) == ()
    assert intersect([2, 4, 9], [2, 4, 9]) == (2, 4, 9)


def test_round_trip(toy):
    vl, ed = io.StringIO(), io.StringIO()
    write_graph(toy, vl, ed)
    again = load(vl.getvalue(), ed.getvalue())
    assert again == toy


def test_from_ids_rejects_loops():
    with pytest.raises(GraphValidationError):
        LabeledGraph.from_ids(2, {}, [(1, 1, 0)])


def test_adjacency_views(toy, tp):
    a1 = tp.v("a1")
    assert {tp.g.vertex_names.name(w) for w, _ in toy.out_edges(a1)} == {"p1", "p2", "p3"}
    assert toy.in_edges(a1) == []
