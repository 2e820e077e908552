"""Brute-force reference implementations used to check the miner.

Nothing here reuses the matcher, the path builder or the join: matching
is plain generate-and-test over database vertices and pattern enumeration
grows patterns one element at a time over the whole label alphabet.
"""

from __future__ import annotations

import io
import itertools
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graph import LabeledGraph, VidList
from .pattern import NeighborhoodPattern, canonical_key, canonicalize

MAX_ORACLE_VERTICES = 200

TOY_VERTEX_LABELS = [("a1", "Author"), ("a2", "Author"), ("a3", "Author"), ("a4", "Author")] + [
    (f"p{i}", "Paper") for i in range(1, 9)
]
TOY_EDGES = [
    ("a1", "p1", "writes"),
    ("a1", "p2", "writes"),
    ("a1", "p3", "writes"),
    ("a2", "p4", "writes"),
    ("a2", "p5", "writes"),
    ("a3", "p6", "writes"),
    ("a3", "p7", "writes"),
    ("a4", "p8", "writes"),
    ("p2", "p1", "cites"),
    ("p5", "p4", "cites"),
    ("p7", "p3", "cites"),
    ("p8", "p6", "cites"),
]


class OracleRefusal(RuntimeError):
    """The input is too large for exhaustive evaluation."""


def toy_db() -> LabeledGraph:
    """Four authors and eight papers.

    Authors a1..a3 have at least two papers, a1 and a2 cite themselves,
    a1..a3 have a cited paper and every author has a paper citing another.
    """
    return LabeledGraph.from_names(TOY_VERTEX_LABELS, TOY_EDGES)


def toy_db_tsv() -> Tuple[str, str]:
    """The toy database as ``(vertex_label_tsv, edge_tsv)`` text."""
    vl = io.StringIO()
    ed = io.StringIO()
    for v, l in TOY_VERTEX_LABELS:
        vl.write(f"{v}\t{l}\n")
    for s, d, l in TOY_EDGES:
        ed.write(f"{s}\t{d}\t{l}\n")
    return vl.getvalue(), ed.getvalue()


def _guard(g: LabeledGraph) -> None:
    if g.vertex_count > MAX_ORACLE_VERTICES:
        raise OracleRefusal(f"graph has {g.vertex_count} vertices, oracle limit is {MAX_ORACLE_VERTICES}")


def _assign(n: int, need, back, g_labels, g_edges, nbrs, everyone, assignment: List[int]) -> bool:
    """Extend ``assignment`` (pattern vertices in index order) to a full embedding.

    ``need[u]`` is the label set of pattern vertex ``u`` and ``back[u]``
    lists the pattern edges whose other endpoint precedes ``u``; they are
    checked as soon as ``u`` is placed. When there is one, only database
    vertices joined to that endpoint's image by an edge with the same
    label and direction are tried.
    """
    u = len(assignment)
    if u == n:
        return True
    edges_u = back[u]
    if edges_u:
        s, d, l = edges_u[0]
        if s == u:
            pool = nbrs.get((assignment[d], l, False), ())
        else:
            pool = nbrs.get((assignment[s], l, True), ())
    else:
        pool = everyone
    for x in pool:
        if x in assignment or not need[u] <= g_labels[x]:
            continue
        assignment.append(x)
        ok = True
        for s, d, l in edges_u:
            if (assignment[s], assignment[d], l) not in g_edges:
                ok = False
                break
        if ok and _assign(n, need, back, g_labels, g_edges, nbrs, everyone, assignment):
            return True
        assignment.pop()
    return False


def _bfs_order(p: NeighborhoodPattern) -> List[int]:
    # Detached vertices (fragments) go last, in index order.
    order = [0]
    for u in order:
        for w in sorted(p.undirected_neighbors[u]):
            if w not in order:
                order.append(w)
    order += [v for v in range(p.vertex_count) if v not in order]
    return order


def naive_matches(
    p: NeighborhoodPattern, g: LabeledGraph, universe: Optional[Sequence[int]] = None
) -> VidList:
    """Vertices ``v`` such that some injective label/edge-preserving map sends the pivot to ``v``."""
    _guard(g)
    if universe is None:
        universe = range(g.vertex_count)
    p = p.relabeled(_bfs_order(p))
    back: List[list] = [[] for _ in range(p.vertex_count)]
    for s, d, l in p.edges:
        back[max(s, d)].append((s, d, l))
    # (vertex, edge label, outgoing?) -> neighbors, built from the raw edge set
    nbrs: Dict[Tuple[int, int, bool], set] = {}
    for a, b, l in g.edges:
        nbrs.setdefault((a, l, True), set()).add(b)
        nbrs.setdefault((b, l, False), set()).add(a)
    n = p.vertex_count
    need = p.vertex_labels
    everyone = range(g.vertex_count)
    out = []
    for v in universe:
        if need[0] <= g.vertex_labels[v] and _assign(
            n, need, back, g.vertex_labels, g.edges, nbrs, everyone, [v]
        ):
            out.append(v)
    return tuple(out)


def _grow(p: NeighborhoodPattern, n_vlabels: int, n_elabels: int) -> Iterable[NeighborhoodPattern]:
    """Every pattern obtained by adding one element to ``p``."""
    n = p.vertex_count
    for v in range(n):
        for l in range(n_vlabels):
            if l not in p.vertex_labels[v]:
                yield p.with_label(v, l)
    for l in range(n_elabels):
        for s in range(n):
            for d in range(n):
                if s != d and (s, d, l) not in p.edges:
                    yield p.with_edge(s, d, l)
            yield p.with_edge(s, n, l)
            yield p.with_edge(n, s, l)


def enumerate_patterns(
    g: LabeledGraph,
    max_size: int,
    tau: int,
    universe: Optional[Sequence[int]] = None,
) -> Dict[str, Tuple[NeighborhoodPattern, int]]:
    """All connected patterns of size <= ``max_size`` with support >= ``tau``.

    Keys are canonical keys; values are ``(canonical pattern, support)``.
    Growth only continues from patterns that reach ``tau``, which is safe
    because adding an element can never raise support.
    """
    _guard(g)
    n_vl = len(g.vertex_label_vocab)
    n_el = len(g.edge_label_vocab)
    out: Dict[str, Tuple[NeighborhoodPattern, int]] = {}
    frontier = [NeighborhoodPattern.empty()]
    for _ in range(max_size):
        nxt: Dict[str, NeighborhoodPattern] = {}
        grown = set()
        for p in frontier:
            for q in _grow(p, n_vl, n_el):
                if q in grown:
                    continue
                grown.add(q)
                key = canonical_key(q)
                if key in nxt or key in out:
                    continue
                nxt[key] = q
        frontier = []
        for key, q in nxt.items():
            sup = len(naive_matches(q, g, universe))
            if sup >= tau:
                out[key] = (canonicalize(q)[1], sup)
                frontier.append(q)
    return out


def reduce_subiso(
    g1_edges: Iterable[Tuple[int, int]], n1: int, g2_edges: Iterable[Tuple[int, int]], n2: int
) -> Tuple[NeighborhoodPattern, NeighborhoodPattern]:
    """Pivoted instance equivalent to "is G1 a subgraph of G2".

    Each unlabeled graph gets a new pivot (vertex 0) with an edge to every
    original vertex; the originals shift up by one.
    """

    def lift(edges, n):
        es = [(s + 1, d + 1, 0) for s, d in edges]
        es += [(0, v + 1, 0) for v in range(n)]
        return NeighborhoodPattern.build(n + 1, (), es)

    return lift(g1_edges, n1), lift(g2_edges, n2)


def brute_force_subiso(
    g1_edges: Iterable[Tuple[int, int]], n1: int, g2_edges: Iterable[Tuple[int, int]], n2: int
) -> bool:
    """Classic directed (non-induced) subgraph isomorphism by trying every injection."""
    e1 = list(set(g1_edges))
    e2 = set(g2_edges)
    if n1 > n2 or len(e1) > len(e2):
        return False
    for perm in itertools.permutations(range(n2), n1):
        if all((perm[s], perm[d]) in e2 for s, d in e1):
            return True
    return False


def random_graph(
    rng: random.Random,
    n_vertices: int,
    n_edges: int,
    n_vertex_labels: int,
    n_edge_labels: int,
    label_prob: float = 0.4,
) -> LabeledGraph:
    """Random loop-free graph; ``n_edges`` is an upper bound (duplicates collapse)."""
    labels = [
        {l for l in range(n_vertex_labels) if rng.random() < label_prob} for _ in range(n_vertices)
    ]
    edges = set()
    if n_vertices >= 2 and n_edge_labels:
        for _ in range(n_edges):
            s, d = rng.sample(range(n_vertices), 2)
            edges.add((s, d, rng.randrange(n_edge_labels)))
    return LabeledGraph.from_ids(
        n_vertices,
        labels,
        edges,
        vertex_label_names=[f"L{i}" for i in range(n_vertex_labels)],
        edge_label_names=[f"e{i}" for i in range(n_edge_labels)],
        vertex_names=[f"v{i}" for i in range(n_vertices)],
    )


CORPUS_MAX_VERTICES = 30
CORPUS_MAX_EDGES = 60


def corpus_graph(rng: random.Random) -> LabeledGraph:
    """One small random graph for equivalence testing.

    At most 30 vertices, 60 edges, 3 vertex labels and 3 edge labels.
    """
    n = rng.randint(5, CORPUS_MAX_VERTICES)
    m = rng.randint(n // 2, min(CORPUS_MAX_EDGES, 2 * n))
    return random_graph(rng, n, m, rng.randint(1, 3), rng.randint(1, 3), label_prob=0.3)


def corpus(seed: int, count: int) -> List[LabeledGraph]:
    rng = random.Random(seed)
    return [corpus_graph(rng) for _ in range(count)]
