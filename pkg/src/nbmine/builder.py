"""Breadth-first construction of all frequent path patterns.

Path patterns are the only patterns that cannot be produced by joining two
smaller ones, so they are grown directly by walking the database: each
queued path is traversed from every candidate start vertex, and every
distinct next move observed there counts once for that vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from .graph import LabeledGraph, VidList
from .pattern import NeighborhoodPattern

EDGE, LABEL = 0, 1
OUT, IN = 0, 1


class PathStep(NamedTuple):
    """One move along a path: follow an edge, or stop on a vertex label.

    Tuples sort edge steps before label steps, then by direction, then by
    label ID, which fixes the queue order.
    """

    kind: int
    direction: int
    label: int

    @property
    def is_edge(self) -> bool:
        return self.kind == EDGE

    def __repr__(self) -> str:
        if self.kind == LABEL:
            return f"Label({self.label})"
        return f"{'Out' if self.direction == OUT else 'In'}({self.label})"


def edge_step(direction: int, label: int) -> PathStep:
    return PathStep(EDGE, direction, label)


def label_step(label: int) -> PathStep:
    return PathStep(LABEL, OUT, label)


class PathPattern(tuple):
    """A sequence of :class:`PathStep` read outward from the pivot."""

    def __new__(cls, steps=()):
        steps = tuple(steps)
        for s in steps[:-1]:
            if not s.is_edge:
                raise ValueError("a label step can only end a path")
        return super().__new__(cls, steps)

    @property
    def size(self) -> int:
        return len(self)

    @property
    def terminated(self) -> bool:
        return bool(self) and not self[-1].is_edge

    def append(self, step: PathStep) -> "PathPattern":  # type: ignore[override]
        if self.terminated:
            raise ValueError("cannot extend a path that ends in a label")
        return PathPattern(self + (step,))

    def to_pattern(self) -> NeighborhoodPattern:
        """Render as a neighborhood pattern; the i-th edge joins vertices i and i+1."""
        edges = []
        labels = []
        v = 0
        for step in self:
            if step.is_edge:
                if step.direction == OUT:
                    edges.append((v, v + 1, step.label))
                else:
                    edges.append((v + 1, v, step.label))
                v += 1
            else:
                labels.append((v, step.label))
        return NeighborhoodPattern.build(v + 1, labels, edges)

    def __repr__(self) -> str:
        return "PathPattern(" + ", ".join(map(repr, self)) + ")"


def _walk_ends(g: LabeledGraph, v: int, path: Sequence[PathStep]) -> Iterator[Tuple[int, Set[int]]]:
    """Yield ``(endpoint, visited)`` for each injective walk of ``path`` from ``v``."""
    visited = {v}

    def rec(cur: int, i: int):
        if i == len(path):
            yield cur, visited
            return
        step = path[i]
        adj = g.out_by_label[cur] if step.direction == OUT else g.in_by_label[cur]
        for w in adj.get(step.label, ()):
            if w in visited:
                continue
            visited.add(w)
            yield from rec(w, i + 1)
            visited.discard(w)

    yield from rec(v, 0)


def traverse_next_steps(g: LabeledGraph, v: int, path: Sequence[PathStep]) -> Set[PathStep]:
    """Distinct moves available at the end of any injective walk of ``path`` from ``v``."""
    if path and not path[-1].is_edge:
        raise ValueError("path already ends in a label step")
    steps: Set[PathStep] = set()
    for end, visited in _walk_ends(g, v, path):
        for l, ws in g.out_by_label[end].items():
            if any(w not in visited for w in ws):
                steps.add(PathStep(EDGE, OUT, l))
        for l, ws in g.in_by_label[end].items():
            if any(w not in visited for w in ws):
                steps.add(PathStep(EDGE, IN, l))
        for l in g.vertex_labels[end]:
            steps.add(PathStep(LABEL, OUT, l))
    return steps


@dataclass
class PathStats:
    traversals: int = 0
    expanded: int = 0
    levels: Dict[int, int] = field(default_factory=dict)


def frequent_paths(
    g: LabeledGraph,
    tau: int,
    max_size: int,
    start_set: Optional[Sequence[int]] = None,
    use_vid: bool = True,
    stats: Optional[PathStats] = None,
) -> List[Tuple[PathPattern, VidList]]:
    """All path patterns of size <= ``max_size`` matching at least ``tau`` start vertices.

    ``start_set`` is the pivot universe (all vertices when omitted). With
    ``use_vid`` a path is extended by scanning only the vertices its parent
    matched instead of the whole universe; the output is the same.
    Results come in breadth-first discovery order, each with its sorted
    match list.
    """
    if tau < 1:
        raise ValueError("tau must be at least 1")
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    universe: VidList = tuple(range(g.vertex_count)) if start_set is None else tuple(start_set)
    if stats is None:
        stats = PathStats()

    result: List[Tuple[PathPattern, VidList]] = []
    queue = deque([(PathPattern(), universe)])
    while queue:
        path, vids = queue.popleft()
        stats.expanded += 1
        scan = vids if use_vid else universe
        hits: Dict[PathStep, List[int]] = {}
        for v in scan:
            stats.traversals += 1
            for step in traverse_next_steps(g, v, path):
                hits.setdefault(step, []).append(v)
        for step in sorted(hits):
            found = hits[step]
            if len(found) < tau:
                continue
            new_path = path.append(step)
            new_vids = tuple(found)
            result.append((new_path, new_vids))
            stats.levels[new_path.size] = stats.levels.get(new_path.size, 0) + 1
            if step.is_edge and new_path.size < max_size:
                queue.append((new_path, new_vids))
    return result
