"""Neighborhood patterns: small pivoted graphs with vertex 0 as the pivot.

A pattern's *elements* are its vertex labels and its labeled edges; the
size of a pattern is the number of elements. Patterns are immutable
values. Operations here never look at the database graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

PIVOT = 0


class VertexLabel(NamedTuple):
    vertex: int
    label: int


class Edge(NamedTuple):
    src: int
    dst: int
    label: int


PatternElement = Union[VertexLabel, Edge]


@dataclass(frozen=True)
class NeighborhoodPattern:
    """A pivoted labeled multigraph on local vertices ``0..n-1``.

    ``vertex_labels[v]`` is the label set of local vertex ``v`` and ``edges``
    holds ``(src, dst, label)`` triples. Vertex 0 is always the pivot.

    The constructor does not insist on connectivity because joins work
    with disconnected intermediate fragments; use :meth:`is_valid` to
    check a finished pattern.
    """

    vertex_labels: Tuple[FrozenSet[int], ...]
    edges: FrozenSet[Tuple[int, int, int]]

    @classmethod
    def build(
        cls,
        vertex_count: int,
        labels: Iterable[Tuple[int, int]] = (),
        edges: Iterable[Tuple[int, int, int]] = (),
    ) -> "NeighborhoodPattern":
        """Build from ``(vertex, label)`` pairs and ``(src, dst, label)`` triples."""
        ls: List[set] = [set() for _ in range(vertex_count)]
        for v, l in labels:
            ls[v].add(l)
        es = frozenset((s, d, l) for s, d, l in edges)
        for s, d, _ in es:
            if not (0 <= s < vertex_count and 0 <= d < vertex_count):
                raise ValueError(f"edge ({s}, {d}) refers to a missing vertex")
        return cls(tuple(frozenset(x) for x in ls), es)

    @classmethod
    def empty(cls) -> "NeighborhoodPattern":
        """The bare pivot with no elements (the search seed, never reported)."""
        return cls((frozenset(),), frozenset())

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    @property
    def size(self) -> int:
        return sum(len(ls) for ls in self.vertex_labels) + len(self.edges)

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    def elements(self) -> List[PatternElement]:
        """All elements in a fixed order: labels by vertex, then sorted edges."""
        out: List[PatternElement] = [
            VertexLabel(v, l) for v, ls in enumerate(self.vertex_labels) for l in sorted(ls)
        ]
        out.extend(Edge(*e) for e in sorted(self.edges))
        return out

    def __contains__(self, e: object) -> bool:
        if isinstance(e, Edge):
            return tuple(e) in self.edges
        if isinstance(e, VertexLabel):
            return 0 <= e.vertex < self.vertex_count and e.label in self.vertex_labels[e.vertex]
        return False

    # Adjacency views. They share attribute names with LabeledGraph so the
    # matcher can treat a pattern as a target.

    @cached_property
    def out_by_label(self) -> Tuple[Dict[int, FrozenSet[int]], ...]:
        adj: List[Dict[int, set]] = [{} for _ in range(self.vertex_count)]
        for s, d, l in self.edges:
            adj[s].setdefault(l, set()).add(d)
        return tuple({l: frozenset(ws) for l, ws in a.items()} for a in adj)

    @cached_property
    def in_by_label(self) -> Tuple[Dict[int, FrozenSet[int]], ...]:
        adj: List[Dict[int, set]] = [{} for _ in range(self.vertex_count)]
        for s, d, l in self.edges:
            adj[d].setdefault(l, set()).add(s)
        return tuple({l: frozenset(ws) for l, ws in a.items()} for a in adj)

    @cached_property
    def label_index(self) -> Dict[int, Tuple[int, ...]]:
        index: Dict[int, List[int]] = {}
        for v, ls in enumerate(self.vertex_labels):
            for l in ls:
                index.setdefault(l, []).append(v)
        return {l: tuple(vs) for l, vs in index.items()}

    @cached_property
    def incident(self) -> Tuple[Tuple[Tuple[int, int, bool], ...], ...]:
        """Per vertex: ``(other endpoint, label, vertex is the source)`` triples."""
        inc: List[List[Tuple[int, int, bool]]] = [[] for _ in range(self.vertex_count)]
        for s, d, l in self.edges:
            inc[s].append((d, l, True))
            inc[d].append((s, l, False))
        return tuple(tuple(x) for x in inc)

    @cached_property
    def undirected_neighbors(self) -> Tuple[FrozenSet[int], ...]:
        nbrs: List[set] = [set() for _ in range(self.vertex_count)]
        for s, d, _ in self.edges:
            nbrs[s].add(d)
            nbrs[d].add(s)
        return tuple(frozenset(x) for x in nbrs)

    def degree(self, v: int) -> int:
        """Number of incident edges, counting parallel edges separately."""
        return sum((s == v) + (d == v) for s, d, _ in self.edges)

    def is_connected(self) -> bool:
        """Every vertex reaches the pivot when edge directions are ignored."""
        seen = {PIVOT}
        stack = [PIVOT]
        nbrs = self.undirected_neighbors
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def is_valid(self) -> bool:
        """Connected, loop-free, no bare non-pivot vertex, at least one element."""
        if self.size == 0:
            return False
        if any(s == d for s, d, _ in self.edges):
            return False
        nbrs = self.undirected_neighbors
        if any(not nbrs[v] for v in range(1, self.vertex_count)):
            return False
        return self.is_connected()

    def with_label(self, v: int, label: int) -> "NeighborhoodPattern":
        ls = list(self.vertex_labels)
        ls[v] = ls[v] | {label}
        return NeighborhoodPattern(tuple(ls), self.edges)

    def with_edge(self, src: int, dst: int, label: int) -> "NeighborhoodPattern":
        """Add an edge; an endpoint equal to ``vertex_count`` creates a new vertex."""
        n = self.vertex_count
        ls = self.vertex_labels
        if max(src, dst) == n:
            ls = ls + (frozenset(),)
        elif max(src, dst) > n:
            raise ValueError("can only introduce one new vertex at a time")
        return NeighborhoodPattern(ls, self.edges | {(src, dst, label)})

    def relabeled(self, order: Sequence[int]) -> "NeighborhoodPattern":
        """Renumber so that old vertex ``order[i]`` becomes vertex ``i``."""
        new = {old: i for i, old in enumerate(order)}
        return NeighborhoodPattern(
            tuple(self.vertex_labels[old] for old in order),
            frozenset((new[s], new[d], l) for s, d, l in self.edges),
        )


def size(p: NeighborhoodPattern) -> int:
    return p.size


def remove_with_map(
    p: NeighborhoodPattern, e: PatternElement
) -> Tuple[NeighborhoodPattern, List[Optional[int]]]:
    """Remove ``e`` and drop non-pivot vertices left with no label and no edge.

    Returns the new pattern and a map from old vertex IDs to new ones
    (``None`` for deleted vertices). The result may be disconnected.
    """
    if e not in p:
        raise KeyError(f"{e!r} is not an element of the pattern")
    labels = list(p.vertex_labels)
    edges = set(p.edges)
    if isinstance(e, VertexLabel):
        labels[e.vertex] = labels[e.vertex] - {e.label}
        touched = (e.vertex,)
    else:
        edges.discard(tuple(e))
        touched = (e.src, e.dst)

    incident = set()
    for s, d, _ in edges:
        incident.add(s)
        incident.add(d)
    doomed = {v for v in touched if v != PIVOT and not labels[v] and v not in incident}

    remap: List[Optional[int]] = []
    nxt = 0
    for v in range(p.vertex_count):
        if v in doomed:
            remap.append(None)
        else:
            remap.append(nxt)
            nxt += 1
    new_labels = tuple(labels[v] for v in range(p.vertex_count) if v not in doomed)
    new_edges = frozenset((remap[s], remap[d], l) for s, d, l in edges)
    return NeighborhoodPattern(new_labels, new_edges), remap


def remove_element(p: NeighborhoodPattern, e: PatternElement) -> NeighborhoodPattern:
    """``p`` without ``e``, isolated vertices cleaned up; may be disconnected.

    Removing the last element of a size-1 pattern gives the empty pattern
    (check ``result.is_empty``).
    """
    return remove_with_map(p, e)[0]


def decompositions(p: NeighborhoodPattern) -> List[Tuple[PatternElement, NeighborhoodPattern]]:
    """Elements whose removal leaves a connected pattern one element smaller.

    A pattern is decomposable when there are at least two of them.
    """
    out = []
    for e in p.elements():
        sub = remove_element(p, e)
        if not sub.is_empty and sub.is_connected():
            out.append((e, sub))
    return out


def is_decomposable(p: NeighborhoodPattern) -> bool:
    return len(decompositions(p)) >= 2


def is_path_pattern(p: NeighborhoodPattern) -> bool:
    """A simple path hanging off the pivot with at most one label, at the far end."""
    n = p.vertex_count
    if p.size == 0 or len(p.edges) != n - 1 or not p.is_connected():
        return False
    degrees = [p.degree(v) for v in range(n)]
    if n > 1 and degrees[PIVOT] != 1:
        return False
    if any(d > 2 for d in degrees):
        return False
    labeled = [(v, l) for v, ls in enumerate(p.vertex_labels) for l in ls]
    if len(labeled) > 1:
        return False
    if labeled:
        far = PIVOT if n == 1 else next(v for v in range(1, n) if degrees[v] == 1)
        return labeled[0][0] == far
    return True


def pattern_type(p: NeighborhoodPattern) -> str:
    """One of ``"path"``, ``"tree"`` or ``"cyclic"``."""
    if is_path_pattern(p):
        return "path"
    if len(p.edges) == p.vertex_count - 1:
        return "tree"
    return "cyclic"


def _vertex_invariant(p: NeighborhoodPattern, v: int):
    inc = p.incident[v]
    out_ls = sorted(l for _, l, is_src in inc if is_src)
    in_ls = sorted(l for _, l, is_src in inc if not is_src)
    to_pivot = sorted((is_src, l) for w, l, is_src in inc if w == PIVOT)
    return (tuple(sorted(p.vertex_labels[v])), tuple(out_ls), tuple(in_ls), tuple(to_pivot))


def _code(p: NeighborhoodPattern, order: Sequence[int]):
    new = {old: i for i, old in enumerate(order)}
    labels = tuple(sorted((new[v], l) for v, ls in enumerate(p.vertex_labels) for l in ls))
    edges = tuple(sorted((new[s], new[d], l) for s, d, l in p.edges))
    return labels, edges


def canonical_order(p: NeighborhoodPattern) -> Tuple[int, ...]:
    """Vertex order (pivot first) giving the lexicographically least code.

    Non-pivot vertices are first grouped by an isomorphism-invariant
    signature; only orders that keep the groups in signature order are
    tried, which shrinks the ``(n-1)!`` search without changing the result
    class.
    """
    groups: Dict[tuple, List[int]] = {}
    for v in range(1, p.vertex_count):
        groups.setdefault(_vertex_invariant(p, v), []).append(v)
    blocks = [groups[k] for k in sorted(groups)]
    best_code = None
    best_order: Tuple[int, ...] = (PIVOT,)
    for combo in itertools.product(*(itertools.permutations(b) for b in blocks)):
        order = (PIVOT,) + tuple(v for block in combo for v in block)
        code = _code(p, order)
        if best_code is None or code < best_code:
            best_code, best_order = code, order
    return best_order


def canonical_form(p: NeighborhoodPattern) -> NeighborhoodPattern:
    return p.relabeled(canonical_order(p))


def canonicalize(p: NeighborhoodPattern) -> Tuple[str, NeighborhoodPattern]:
    """``(canonical_key(p), canonical_form(p))`` from a single search."""
    order = canonical_order(p)
    labels, edges = _code(p, order)
    lpart = ",".join(f"{v}:{l}" for v, l in labels)
    epart = ",".join(f"{s}>{d}:{l}" for s, d, l in edges)
    return f"{p.vertex_count}|{lpart}|{epart}", p.relabeled(order)


def canonical_key(p: NeighborhoodPattern) -> str:
    """String equal for two patterns iff they are pivot-preserving isomorphic."""
    return canonicalize(p)[0]


def coarse_hash(p: NeighborhoodPattern) -> int:
    """Cheap isomorphism-invariant hash of the pivot's labels and incident edges."""
    pivot_edges = sorted((0 if s == PIVOT else 1, l) for s, d, l in p.edges if PIVOT in (s, d))
    return hash((tuple(sorted(p.vertex_labels[PIVOT])), tuple(pivot_edges), p.size))


def format_pattern(
    p: NeighborhoodPattern,
    vertex_label_names: Sequence[str],
    edge_label_names: Sequence[str],
    support: int,
    ratio: Optional[float] = None,
) -> str:
    """Text block: ``P size support [ratio]``, then sorted ``L`` and ``E`` lines."""
    head = f"P {p.size} {support}"
    if ratio is not None:
        head += f" {ratio:.3f}"
    lines = [head]
    lines += [
        f"L {v} {name}"
        for v, name in sorted(
            (v, vertex_label_names[l]) for v, ls in enumerate(p.vertex_labels) for l in ls
        )
    ]
    lines += [
        f"E {s} {d} {name}"
        for s, d, name in sorted((s, d, edge_label_names[l]) for s, d, l in p.edges)
    ]
    return "\n".join(lines) + "\n"


class ParsedPattern(NamedTuple):
    pattern: NeighborhoodPattern
    support: int
    ratio: Optional[float]


def parse_patterns(
    text: str, vertex_label_ids: Dict[str, int], edge_label_ids: Dict[str, int]
) -> List[ParsedPattern]:
    """Read back blocks written by :func:`format_pattern`."""
    out: List[ParsedPattern] = []
    head = None
    labels: List[Tuple[int, int]] = []
    edges: List[Tuple[int, int, int]] = []

    def flush():
        if head is None:
            return
        n = 1 + max([v for v, _ in labels] + [max(s, d) for s, d, _ in edges] + [0])
        p = NeighborhoodPattern.build(n, labels, edges)
        if p.size != head[0]:
            raise ValueError(f"pattern declares size {head[0]} but has {p.size} elements")
        out.append(ParsedPattern(p, head[1], head[2]))

    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "P" and len(parts) in (3, 4):
            flush()
            ratio = float(parts[3]) if len(parts) == 4 else None
            head = (int(parts[1]), int(parts[2]), ratio)
            labels, edges = [], []
        elif tag == "L" and len(parts) == 3 and head is not None:
            labels.append((int(parts[1]), vertex_label_ids[parts[2]]))
        elif tag == "E" and len(parts) == 4 and head is not None:
            edges.append((int(parts[1]), int(parts[2]), edge_label_ids[parts[3]]))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    flush()
    return out
