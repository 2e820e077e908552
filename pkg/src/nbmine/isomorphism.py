"""Pivoted subgraph isomorphism by depth-first backtracking.

The same search runs against a database graph or against another pattern:
both expose ``vertex_count``, ``vertex_labels``, ``out_by_label``,
``in_by_label`` and ``label_index``.
"""

from __future__ import annotations

from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .graph import LabeledGraph, VidList
from .pattern import PIVOT, NeighborhoodPattern

Embedding = Tuple[int, ...]
"""``embedding[u]`` is the target vertex of pattern vertex ``u``."""

_NOTHING: FrozenSet[int] = frozenset()


def _candidates(p, target, inc, u, mapping, used):
    """Target vertices that ``u`` may take given the current partial map.

    Returns ``None`` when ``u`` has no mapped neighbor yet.
    """
    constraints = []
    for w, l, u_is_src in inc[u]:
        tw = mapping[w]
        if tw < 0:
            continue
        # u -> w needs an in-neighbor of tw; w -> u needs an out-neighbor.
        adj = target.in_by_label[tw] if u_is_src else target.out_by_label[tw]
        constraints.append(adj.get(l, _NOTHING))
    if not constraints:
        return None
    constraints.sort(key=len)
    cands = constraints[0]
    for c in constraints[1:]:
        if not cands:
            break
        cands = cands & c
    need = p.vertex_labels[u]
    labels = target.vertex_labels
    return [x for x in cands if x not in used and need <= labels[x]]


def _free_candidates(p, target, u, used):
    need = p.vertex_labels[u]
    if need:
        pool = None
        for l in need:
            vs = target.label_index.get(l, ())
            if pool is None or len(vs) < len(pool):
                pool = vs
        labels = target.vertex_labels
        return [x for x in pool if x not in used and need <= labels[x]]
    return [x for x in range(target.vertex_count) if x not in used]


def _search(p, target, inc, mapping, used, remaining) -> Iterator[Embedding]:
    if not remaining:
        yield tuple(mapping)
        return
    # Fail-first: the attached vertex with the fewest candidates goes next.
    best_u = None
    best = None
    for u in remaining:
        cands = _candidates(p, target, inc, u, mapping, used)
        if cands is None:
            continue
        if best is None or len(cands) < len(best):
            best_u, best = u, cands
            if not cands:
                return
    if best_u is None:
        # Only vertices of components detached from the pivot are left.
        best_u = min(remaining)
        best = _free_candidates(p, target, best_u, used)
    remaining = [u for u in remaining if u != best_u]
    for x in sorted(best):
        mapping[best_u] = x
        used.add(x)
        yield from _search(p, target, inc, mapping, used, remaining)
        used.discard(x)
    mapping[best_u] = -1


def iter_embeddings(p: NeighborhoodPattern, target, pivot: int) -> Iterator[Embedding]:
    """All pivot-preserving embeddings of ``p`` into ``target`` rooted at ``pivot``."""
    if p.vertex_count > target.vertex_count:
        return
    if not p.vertex_labels[PIVOT] <= target.vertex_labels[pivot]:
        return
    mapping = [-1] * p.vertex_count
    mapping[PIVOT] = pivot
    yield from _search(p, target, p.incident, mapping, {pivot}, list(range(1, p.vertex_count)))


def pivoted_subiso_at(p: NeighborhoodPattern, g: LabeledGraph, v: int) -> bool:
    """Whether ``p`` embeds into ``g`` with its pivot sent to ``v``."""
    return next(iter_embeddings(p, g, v), None) is not None


def matches(
    p: NeighborhoodPattern, g: LabeledGraph, candidates: Optional[Sequence[int]] = None
) -> VidList:
    """Sorted sub-list of ``candidates`` (default: all vertices) that ``p`` matches."""
    if candidates is None:
        candidates = range(g.vertex_count)
    pivot_labels = p.vertex_labels[PIVOT]
    vlabels = g.vertex_labels
    if p.vertex_count == 1:
        return tuple(v for v in candidates if pivot_labels <= vlabels[v])
    inc = p.incident
    out = []
    rest = list(range(1, p.vertex_count))
    mapping = [-1] * p.vertex_count
    for v in candidates:
        if not pivot_labels <= vlabels[v]:
            continue
        mapping[PIVOT] = v
        if next(_search(p, g, inc, mapping, {v}, rest), None) is not None:
            out.append(v)
        # _search restores every slot but the pivot when it stops early.
        for u in rest:
            mapping[u] = -1
    return tuple(out)


def support(p: NeighborhoodPattern, g: LabeledGraph, candidates: Optional[Sequence[int]] = None) -> int:
    return len(matches(p, g, candidates))


def embeddings_between(p1: NeighborhoodPattern, p2: NeighborhoodPattern) -> List[Embedding]:
    """Every pivot-preserving embedding of ``p1`` (possibly a fragment) into ``p2``."""
    return list(iter_embeddings(p1, p2, PIVOT))


def is_subpattern(p1: NeighborhoodPattern, p2: NeighborhoodPattern) -> bool:
    """``p1`` is pivoted-subgraph-isomorphic to ``p2``."""
    return next(iter_embeddings(p1, p2, PIVOT), None) is not None


def are_isomorphic(p1: NeighborhoodPattern, p2: NeighborhoodPattern) -> bool:
    return p1.size == p2.size and p1.vertex_count == p2.vertex_count and is_subpattern(p1, p2)
