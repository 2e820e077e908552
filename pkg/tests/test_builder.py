import pytest

from nbmine import PathPattern, edge_step, frequent_paths, label_step, traverse_next_steps
from nbmine.builder import IN, OUT, PathStats


def test_next_steps_from_empty_path(toy, tp):
    assert traverse_next_steps(toy, tp.v("a1"), PathPattern()) == {
        edge_step(OUT, tp.W),
        label_step(tp.AUTHOR),
    }


def test_next_steps_after_writes(toy, tp):
    steps = traverse_next_steps(toy, tp.v("a1"), [edge_step(OUT, tp.W)])
    assert edge_step(OUT, tp.C) in steps
    assert label_step(tp.PAPER) in steps


def test_uncited_endpoint(toy, tp):
    steps = traverse_next_steps(toy, tp.v("a4"), [edge_step(OUT, tp.W)])
    assert steps == {edge_step(OUT, tp.C), label_step(tp.PAPER)}
    assert edge_step(IN, tp.C) not in steps


def test_walks_are_injective(toy, tp):
    # from p1 back along writes reaches a1; a1's writes edges lead to p2, p3 but never back to p1
    ends = traverse_next_steps(toy, tp.v("p1"), [edge_step(IN, tp.W), edge_step(OUT, tp.W)])
    assert label_step(tp.PAPER) in ends
    assert traverse_next_steps(toy, tp.v("p8"), [edge_step(IN, tp.W)]) == {label_step(tp.AUTHOR)}


def test_label_step_ends_path(tp):
    with pytest.raises(ValueError):
        PathPattern([label_step(tp.PAPER), edge_step(OUT, tp.W)])
    with pytest.raises(ValueError):
        traverse_next_steps(None, 0, [label_step(tp.PAPER)])


def test_frequent_paths_toy(toy, tp):
    authors = tp.vids("a1", "a2", "a3", "a4")
    found = dict(frequent_paths(toy, 3, 3, authors))
    writes = PathPattern([edge_step(OUT, tp.W)])
    cited = PathPattern([edge_step(OUT, tp.W), edge_step(IN, tp.C)])
    assert found[writes] == authors
    assert len(found[cited]) >= 3
    for path, vids in found.items():
        assert len(vids) >= 3 and path.size <= 3


def test_threshold_above_universe(toy, tp):
    assert frequent_paths(toy, 5, 3, tp.vids("a1", "a2", "a3", "a4")) == []


def test_vid_transparent(toy):
    on = frequent_paths(toy, 1, 4, None, True)
    off_stats = PathStats()
    off = frequent_paths(toy, 1, 4, None, False, off_stats)
    assert on == off
    assert off_stats.traversals > 0


def test_to_pattern(tp):
    path = PathPattern([edge_step(OUT, tp.W), edge_step(IN, tp.C), label_step(tp.PAPER)])
    p = path.to_pattern()
    assert p.edges == {(0, 1, tp.W), (2, 1, tp.C)}
    assert p.vertex_labels[2] == {tp.PAPER}
    assert path.size == p.size == 3


def test_bad_arguments(toy):
    with pytest.raises(ValueError):
        frequent_paths(toy, 0, 3)
    with pytest.raises(ValueError):
        frequent_paths(toy, 1, 0)
