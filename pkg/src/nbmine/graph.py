"""Single-graph database: a directed, vertex-multi-labeled, edge-labeled graph.

Vertices are dense integers ``0..vertex_count-1``. External string IDs and
label names are kept in vocabularies so results can be printed back in the
caller's terms. A :class:`LabeledGraph` is immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, TextIO, Tuple

VidList = Tuple[int, ...]
"""Strictly ascending tuple of vertex IDs."""

EdgeTriple = Tuple[int, int, int]


class GraphFormatError(ValueError):
    """Base class for problems found while reading a graph."""


class GraphParseError(GraphFormatError):
    """A TSV line has the wrong shape."""

    def __init__(self, message: str, source: str = "", line: int = 0):
        self.source = source
        self.line = line
        where = f"{source}:{line}: " if line else ""
        super().__init__(where + message)


class GraphValidationError(GraphFormatError):
    """Input is well-formed but violates a graph invariant (loop, empty label)."""

    def __init__(self, message: str, source: str = "", line: int = 0):
        self.source = source
        self.line = line
        where = f"{source}:{line}: " if line else ""
        super().__init__(where + message)


class Vocabulary:
    """Bidirectional name <-> dense ID table, IDs in first-seen order."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: List[str] = []
        self._ids: Dict[str, int] = {}
        for name in names:
            self.add(name)

    def add(self, name: str) -> int:
        idx = self._ids.get(name)
        if idx is None:
            idx = len(self._names)
            self._names.append(name)
            self._ids[name] = idx
        return idx

    def id(self, name: str) -> Optional[int]:
        return self._ids.get(name)

    def name(self, idx: int) -> str:
        return self._names[idx]

    def __contains__(self, name: object) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self):
        return iter(self._names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vocabulary) and self._names == other._names

    def __repr__(self) -> str:
        return f"Vocabulary({self._names!r})"


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """The database graph together with the indexes the miner needs.

    Build instances with :meth:`from_ids`, :meth:`from_names` or
    :func:`load_graph`; the index fields are derived and should not be
    passed by hand.
    """

    vertex_count: int
    vertex_labels: Tuple[FrozenSet[int], ...]
    edges: FrozenSet[EdgeTriple]
    vertex_names: Vocabulary
    vertex_label_vocab: Vocabulary
    edge_label_vocab: Vocabulary
    label_index: Dict[int, VidList] = field(repr=False)
    out_by_label: Tuple[Dict[int, FrozenSet[int]], ...] = field(repr=False)
    in_by_label: Tuple[Dict[int, FrozenSet[int]], ...] = field(repr=False)

    @classmethod
    def from_ids(
        cls,
        vertex_count: int,
        vertex_labels: Dict[int, Iterable[int]] | Sequence[Iterable[int]],
        edges: Iterable[EdgeTriple],
        vertex_label_names: Optional[Sequence[str]] = None,
        edge_label_names: Optional[Sequence[str]] = None,
        vertex_names: Optional[Sequence[str]] = None,
    ) -> "LabeledGraph":
        """Build a graph from integer IDs.

        Missing vocabularies default to the decimal string of each ID.
        Raises :class:`GraphValidationError` on loops or out-of-range IDs.
        """
        if isinstance(vertex_labels, dict):
            label_items = vertex_labels.items()
        else:
            label_items = enumerate(vertex_labels)
        labels: List[set] = [set() for _ in range(vertex_count)]
        for v, ls in label_items:
            if not 0 <= v < vertex_count:
                raise GraphValidationError(f"vertex {v} out of range")
            labels[v].update(ls)

        edge_set = frozenset((int(s), int(d), int(l)) for s, d, l in edges)
        for s, d, l in edge_set:
            if s == d:
                raise GraphValidationError(f"loop edge on vertex {s}")
            if not (0 <= s < vertex_count and 0 <= d < vertex_count):
                raise GraphValidationError(f"edge ({s}, {d}) out of range")

        max_vl = max((l for ls in labels for l in ls), default=-1)
        max_el = max((l for _, _, l in edge_set), default=-1)
        if vertex_label_names is None:
            vertex_label_names = [str(i) for i in range(max_vl + 1)]
        if edge_label_names is None:
            edge_label_names = [str(i) for i in range(max_el + 1)]
        if vertex_names is None:
            vertex_names = [str(i) for i in range(vertex_count)]
        if max_vl >= len(vertex_label_names) or max_el >= len(edge_label_names):
            raise GraphValidationError("label ID outside its vocabulary")
        return cls._build(
            vertex_count,
            [frozenset(ls) for ls in labels],
            edge_set,
            Vocabulary(vertex_names),
            Vocabulary(vertex_label_names),
            Vocabulary(edge_label_names),
        )

    @classmethod
    def from_names(
        cls,
        vertex_labels: Iterable[Tuple[str, str]],
        edges: Iterable[Tuple[str, str, str]],
    ) -> "LabeledGraph":
        """Build a graph from ``(vertex, label)`` and ``(src, dst, label)`` names."""
        vertices = Vocabulary()
        vl_vocab = Vocabulary()
        el_vocab = Vocabulary()
        label_pairs = []
        for v, l in vertex_labels:
            label_pairs.append((vertices.add(v), vl_vocab.add(l)))
        edge_triples = []
        for s, d, l in edges:
            if s == d:
                raise GraphValidationError(f"loop edge on vertex {s!r}")
            if not l:
                raise GraphValidationError(f"empty edge label on ({s!r}, {d!r})")
            edge_triples.append((vertices.add(s), vertices.add(d), el_vocab.add(l)))
        labels: List[set] = [set() for _ in range(len(vertices))]
        for v, l in label_pairs:
            labels[v].add(l)
        return cls._build(
            len(vertices),
            [frozenset(ls) for ls in labels],
            frozenset(edge_triples),
            vertices,
            vl_vocab,
            el_vocab,
        )

    @classmethod
    def _build(cls, n, labels, edge_set, vnames, vl_vocab, el_vocab) -> "LabeledGraph":
        index: Dict[int, List[int]] = {}
        for v, ls in enumerate(labels):
            for l in ls:
                index.setdefault(l, []).append(v)
        out_adj: List[Dict[int, set]] = [{} for _ in range(n)]
        in_adj: List[Dict[int, set]] = [{} for _ in range(n)]
        for s, d, l in edge_set:
            out_adj[s].setdefault(l, set()).add(d)
            in_adj[d].setdefault(l, set()).add(s)
        return cls(
            vertex_count=n,
            vertex_labels=tuple(labels),
            edges=edge_set,
            vertex_names=vnames,
            vertex_label_vocab=vl_vocab,
            edge_label_vocab=el_vocab,
            label_index={l: tuple(vs) for l, vs in index.items()},
            out_by_label=tuple({l: frozenset(ns) for l, ns in adj.items()} for adj in out_adj),
            in_by_label=tuple({l: frozenset(ns) for l, ns in adj.items()} for adj in in_adj),
        )

    @property
    def size(self) -> int:
        """Number of elements: vertex-label pairs plus edges."""
        return sum(len(ls) for ls in self.vertex_labels) + len(self.edges)

    def all_vertices(self) -> VidList:
        return tuple(range(self.vertex_count))

    def out_edges(self, v: int) -> List[Tuple[int, int]]:
        """``(neighbor, label)`` pairs for edges leaving ``v``."""
        return [(w, l) for l, ws in self.out_by_label[v].items() for w in ws]

    def in_edges(self, v: int) -> List[Tuple[int, int]]:
        """``(neighbor, label)`` pairs for edges entering ``v``."""
        return [(w, l) for l, ws in self.in_by_label[v].items() for w in ws]

    def named_elements(self):
        """Vertex names, named labels and named edges, independent of ID order."""
        vn = self.vertex_names.name
        vl = self.vertex_label_vocab.name
        el = self.edge_label_vocab.name
        return (
            frozenset(vn(v) for v in range(self.vertex_count)),
            frozenset((vn(v), vl(l)) for v, ls in enumerate(self.vertex_labels) for l in ls),
            frozenset((vn(s), vn(d), el(l)) for s, d, l in self.edges),
        )

    def __eq__(self, other: object) -> bool:
        # IDs are an internal numbering; two graphs are equal when they hold
        # the same named elements.
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.named_elements() == other.named_elements()

    __hash__ = None  # type: ignore[assignment]


def vertices_with_label(g: LabeledGraph, label: int | str) -> VidList:
    """Sorted IDs of vertices carrying ``label`` (an ID or a name).

    Unknown labels give an empty list.
    """
    if isinstance(label, str):
        lid = g.vertex_label_vocab.id(label)
        if lid is None:
            return ()
        label = lid
    return g.label_index.get(label, ())


def intersect(a: Sequence[int], b: Sequence[int]) -> VidList:
    """Linear-time merge intersection of two ascending ID lists."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            out.append(x)
            i += 1
            j += 1
    return tuple(out)


def as_vidlist(ids: Iterable[int]) -> VidList:
    return tuple(sorted(set(ids)))


def _rows(stream: TextIO, fields: int, source: str):
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != fields:
            raise GraphParseError(
                f"expected {fields} tab-separated fields, got {len(parts)}", source, lineno
            )
        yield lineno, parts


def load_graph(vertex_label_source: TextIO, edge_source: TextIO) -> LabeledGraph:
    """Read a graph from the two TSV streams.

    ``vertex_label_source`` holds ``vertex<TAB>label`` lines and
    ``edge_source`` holds ``src<TAB>dst<TAB>label`` lines. Blank lines and
    lines starting with ``#`` are skipped. Repeated lines collapse.
    """
    vsrc = getattr(vertex_label_source, "name", "<vertex labels>")
    esrc = getattr(edge_source, "name", "<edges>")
    label_pairs = []
    for lineno, (v, l) in _rows(vertex_label_source, 2, vsrc):
        if not v or not l:
            raise GraphValidationError("empty vertex ID or label", vsrc, lineno)
        label_pairs.append((v, l))
    edge_rows = []
    for lineno, (s, d, l) in _rows(edge_source, 3, esrc):
        if not s or not d:
            raise GraphValidationError("empty vertex ID", esrc, lineno)
        if not l:
            raise GraphValidationError("empty edge label", esrc, lineno)
        if s == d:
            raise GraphValidationError(f"loop edge on {s!r}", esrc, lineno)
        edge_rows.append((s, d, l))
    return LabeledGraph.from_names(label_pairs, edge_rows)


def write_graph(g: LabeledGraph, vertex_label_sink: TextIO, edge_sink: TextIO) -> None:
    """Inverse of :func:`load_graph`.

    Vertices that carry no label and touch no edge cannot be expressed in
    the TSV formats and are dropped.
    """
    _, labels, edges = g.named_elements()
    for v, l in sorted(labels):
        vertex_label_sink.write(f"{v}\t{l}\n")
    for s, d, l in sorted(edges):
        edge_sink.write(f"{s}\t{d}\t{l}\n")
