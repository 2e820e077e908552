import random

import pytest

from nbmine import Edge, NeighborhoodPattern, VertexLabel, canonical_key, coarse_hash, decompositions
from nbmine import is_path_pattern, remove_element
from nbmine.pattern import format_pattern, pattern_type, parse_patterns


def P(n, labels=(), edges=()):
    return NeighborhoodPattern.build(n, labels, edges)


def test_size(tp):
    assert P(1, [(0, tp.AUTHOR)]).size == 1
    assert tp.path_two_edges.size == 2
    assert tp.self_cite.size == 3
    assert tp.path_two_edges_labeled.size == 3


def test_remove_far_label_gives_unlabeled_path(tp):
    sub = remove_element(tp.path_two_edges_labeled, VertexLabel(2, tp.PAPER))
    assert sub == tp.path_two_edges


def test_remove_writes_edge_leaves_disconnected_fragment(tp):
    frag = remove_element(tp.has_cited_paper, Edge(0, 1, tp.W))
    assert frag.vertex_count == 3
    assert frag.edges == {(2, 1, tp.C)}
    assert not frag.is_connected()


def test_remove_cites_edge_drops_isolated_paper(tp):
    frag = remove_element(tp.has_cited_paper, Edge(2, 1, tp.C))
    assert frag.vertex_count == 2
    assert frag.edges == {(0, 1, tp.W)}


def test_remove_last_element_is_empty(tp):
    assert remove_element(P(1, [(0, tp.AUTHOR)]), VertexLabel(0, tp.AUTHOR)).is_empty


def test_remove_missing_element_raises(tp):
    with pytest.raises(KeyError):
        remove_element(tp.two_papers, Edge(1, 0, tp.W))


def test_decompositions_of_path(tp):
    d = decompositions(tp.path_two_edges)
    assert len(d) == 1
    assert d[0][0] == Edge(1, 2, tp.C)


def test_decompositions_of_triangle():
    tri = P(3, (), [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    assert len(decompositions(tri)) >= 2


def test_decompositions_with_two_labels():
    p = P(2, [(1, 0), (1, 1)], [(0, 1, 0)])
    assert len(decompositions(p)) >= 2


def test_path_predicate(tp):
    assert is_path_pattern(tp.path_two_edges)
    assert is_path_pattern(tp.path_two_edges_labeled)
    assert is_path_pattern(P(1, [(0, tp.AUTHOR)]))
    assert not is_path_pattern(tp.two_papers)
    # a label anywhere but the far end breaks the path shape
    assert not is_path_pattern(P(3, [(1, 0)], [(0, 1, 0), (1, 2, 0)]))
    assert not is_path_pattern(P(1, [(0, 0), (0, 1)]))


def test_pattern_type(tp):
    assert pattern_type(tp.path_two_edges) == "path"
    assert pattern_type(tp.two_papers) == "tree"
    assert pattern_type(tp.self_cite) == "cyclic"


def test_validity():
    assert P(1, [(0, 0)]).is_valid()
    assert not NeighborhoodPattern.empty().is_valid()
    assert not P(2, [(1, 0)]).is_valid()
    assert not P(3, (), [(1, 2, 0)]).is_valid()


def test_canonical_key_renumbering():
    tri = P(4, [(3, 1)], [(0, 1, 0), (1, 2, 0), (2, 0, 1), (2, 3, 0)])
    rng = random.Random(3)
    for _ in range(10):
        rest = [1, 2, 3]
        rng.shuffle(rest)
        q = tri.relabeled([0] + rest)
        assert canonical_key(q) == canonical_key(tri)
        assert coarse_hash(q) == coarse_hash(tri)


def test_canonical_key_separates(tp):
    assert canonical_key(tp.path_two_edges) != canonical_key(tp.two_papers)
    assert canonical_key(tp.has_cited_paper) != canonical_key(tp.cites_another)


def test_canonical_key_respects_pivot():
    # same shape, pivot at the tail versus the head of the edge
    assert canonical_key(P(2, (), [(0, 1, 0)])) != canonical_key(P(2, (), [(1, 0, 0)]))


def test_coarse_hash_sees_pivot_degree(tp):
    far_a = P(3, [(2, 0)], [(0, 1, 0), (1, 2, 0)])
    far_b = P(3, [(2, 1)], [(0, 1, 0), (1, 2, 0)])
    assert coarse_hash(far_a) == coarse_hash(far_b)
    assert canonical_key(far_a) != canonical_key(far_b)
    assert coarse_hash(tp.two_papers) != coarse_hash(P(3, [(2, 0)], [(0, 1, 0), (1, 2, 0)]))


def test_with_edge_new_vertex():
    p = P(1, [(0, 0)]).with_edge(0, 1, 2)
    assert p.vertex_count == 2 and p.edges == {(0, 1, 2)}
    with pytest.raises(ValueError):
        P(1).with_edge(0, 2, 0)


def test_format_and_parse(tp):
    vnames = list(tp.g.vertex_label_vocab)
    enames = list(tp.g.edge_label_vocab)
    text = format_pattern(tp.self_cite, vnames, enames, 2, 0.5)
    assert text.splitlines()[0] == "P 3 2 0.500"
    text += format_pattern(tp.path_two_edges_labeled, vnames, enames, 4)
    back = parse_patterns(
        text,
        {n: i for i, n in enumerate(vnames)},
        {n: i for i, n in enumerate(enames)},
    )
    assert [b.pattern for b in back] == [tp.self_cite, tp.path_two_edges_labeled]
    assert [b.support for b in back] == [2, 4]
    assert back[1].ratio is None
