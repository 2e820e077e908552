"""Level-wise join/verify mining of frequent neighborhood patterns.

Size-1 patterns and all path patterns come from :func:`frequent_paths`.
Larger non-path patterns are produced by joining pairs of frequent
patterns one size smaller and counting the support of each distinct
candidate. Match lists (VID lists) of the two join inputs are intersected
first: a pair whose intersection is below the threshold is not worth
verifying, and candidates are only checked against the intersection.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .builder import PathStats, frequent_paths
from .graph import LabeledGraph, VidList, intersect, vertices_with_label
from .isomorphism import iter_embeddings, matches
from .pattern import (
    PIVOT,
    NeighborhoodPattern,
    PatternElement,
    VertexLabel,
    canonical_key,
    canonicalize,
    coarse_hash,
    pattern_type,
    remove_with_map,
)

log = logging.getLogger(__name__)


@dataclass
class MiningConfig:
    """Threshold and search options.

    Give exactly one of ``tau`` (absolute count) or ``ratio`` (fraction of
    the pivot universe, rounded up). ``pivot_label`` restricts pivots to
    vertices carrying that label in either mode.
    """

    tau: Optional[int] = None
    ratio: Optional[float] = None
    pivot_label: Optional[str] = None
    max_size: int = 4
    use_vid: bool = True
    retain_vidlists: bool = False

    def __post_init__(self):
        if (self.tau is None) == (self.ratio is None):
            raise ValueError("set exactly one of tau and ratio")
        if self.tau is not None and self.tau < 1:
            raise ValueError("tau must be at least 1")
        if self.ratio is not None and not 0 < self.ratio <= 1:
            raise ValueError("ratio must be in (0, 1]")
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")


@dataclass(frozen=True)
class FrequentPattern:
    pattern: NeighborhoodPattern
    support: int
    key: str
    vids: Optional[VidList] = None
    is_path: bool = False


@dataclass
class LevelStats:
    level: int
    pairs: int = 0
    pairs_pruned: int = 0
    candidates: int = 0  # distinct join results from pairs that survived pruning
    pruned: int = 0  # candidates dropped because their combined VID list fell below tau
    verified: int = 0
    vertex_checks: int = 0
    frequent: int = 0
    paths: int = 0
    millis: float = 0.0


@dataclass
class MiningResult:
    levels: Dict[int, List[FrequentPattern]]
    tau: int
    universe_size: int
    stats: List[LevelStats] = field(default_factory=list)
    path_stats: PathStats = field(default_factory=PathStats)

    def patterns(self) -> List[FrequentPattern]:
        return [fp for k in sorted(self.levels) for fp in self.levels[k]]

    def by_key(self) -> Dict[str, FrequentPattern]:
        return {fp.key: fp for fp in self.patterns()}

    def supports(self) -> Dict[str, int]:
        return {fp.key: fp.support for fp in self.patterns()}

    def ratio(self, fp: FrequentPattern) -> float:
        return fp.support / self.universe_size if self.universe_size else 0.0


def resolve_universe(g: LabeledGraph, cfg: MiningConfig) -> Tuple[VidList, int]:
    """Pivot universe and absolute threshold for ``cfg``."""
    if cfg.pivot_label is None:
        universe: VidList = g.all_vertices()
    else:
        if cfg.pivot_label not in g.vertex_label_vocab:
            raise ValueError(f"unknown pivot label {cfg.pivot_label!r}")
        universe = vertices_with_label(g, cfg.pivot_label)
    if cfg.tau is not None:
        return universe, cfg.tau
    # Fraction(str(.)) keeps 0.1 * 30 at exactly 3.
    tau = math.ceil(Fraction(str(cfg.ratio)) * len(universe))
    return universe, max(1, tau)


def vid_prune(a: Sequence[int], b: Sequence[int], tau: int) -> Optional[VidList]:
    """Intersection of two match lists, or ``None`` if it is smaller than ``tau``."""
    common = intersect(a, b)
    return common if len(common) >= tau else None


Fragment = Tuple[PatternElement, NeighborhoodPattern, List[Optional[int]], str]


def _fragments(p: NeighborhoodPattern) -> List[Fragment]:
    """``(element, p minus element, vertex remap, canonical key of the rest)`` per element."""
    out = []
    for e in p.elements():
        frag, remap = remove_with_map(p, e)
        out.append((e, frag, remap, canonical_key(frag)))
    return out


def _join_fragments(
    frags: Sequence[Fragment], p2: NeighborhoodPattern, cores2: Optional[Set[str]] = None
) -> Iterator[NeighborhoodPattern]:
    # A fragment one element smaller than p2 embeds into p2 only if it is
    # isomorphic to p2 minus some element, so ``cores2`` (the keys of
    # p2's own fragments) filters out fragments with no embedding.
    n2 = p2.vertex_count
    for e, frag, remap, key in frags:
        if cores2 is not None and key not in cores2:
            continue
        for f in iter_embeddings(frag, p2, PIVOT):
            if isinstance(e, VertexLabel):
                t = f[remap[e.vertex]]
                if e.label not in p2.vertex_labels[t]:
                    yield p2.with_label(t, e.label)
                continue
            s, d = remap[e.src], remap[e.dst]
            if s is not None and d is not None:
                edge = (f[s], f[d], e.label)
                if edge not in p2.edges:
                    yield p2.with_edge(*edge)
                continue
            # The removed edge stranded one endpoint. Its image is either a
            # vertex of p2 the fragment did not use, or a brand new vertex.
            known = f[s] if s is not None else f[d]
            image = set(f)
            for x in [x for x in range(n2) if x not in image] + [n2]:
                edge = (x, known, e.label) if s is None else (known, x, e.label)
                if edge not in p2.edges:
                    yield p2.with_edge(*edge)


def _joinable_pairs(cores: Sequence[Set[str]]) -> Iterator[Tuple[int, int]]:
    """Pairs ``i <= j`` whose patterns share a fragment class, in ascending order.

    Only these pairs can produce a join result.
    """
    holders: Dict[str, List[int]] = {}
    for i, keys in enumerate(cores):
        for key in keys:
            holders.setdefault(key, []).append(i)
    for i, keys in enumerate(cores):
        partners = set()
        for key in keys:
            partners.update(j for j in holders[key] if j >= i)
        yield from ((i, j) for j in sorted(partners))


def _acceptable(q: NeighborhoodPattern) -> bool:
    return q.is_valid()


def join(p1: NeighborhoodPattern, p2: NeighborhoodPattern) -> List[NeighborhoodPattern]:
    """Candidates one element larger built from ``p1`` and ``p2``.

    For every element of ``p1`` and every embedding of ``p1`` minus that
    element into ``p2``, the element is put back into ``p2`` through the
    embedding. Duplicates are removed; results are in canonical form,
    sorted by canonical key.
    """
    if p1.size != p2.size:
        raise ValueError(f"cannot join patterns of sizes {p1.size} and {p2.size}")
    seen: Dict[str, NeighborhoodPattern] = {}
    for q in _join_fragments(_fragments(p1), p2):
        if not _acceptable(q):
            continue
        key, form = canonicalize(q)
        seen.setdefault(key, form)
    return [seen[k] for k in sorted(seen)]


class _Candidate:
    __slots__ = ("pattern", "key", "form", "verify")

    def __init__(self, pattern: NeighborhoodPattern):
        self.pattern = pattern
        self.key: Optional[str] = None
        self.form: Optional[NeighborhoodPattern] = None
        self.verify: Optional[VidList] = None

    def get_key(self) -> str:
        if self.key is None:
            self.key, self.form = canonicalize(self.pattern)
        return self.key

    def get_form(self) -> NeighborhoodPattern:
        self.get_key()
        return self.form


class _CandidatePool:
    """De-duplicates join output: exact structure, then coarse hash, then canonical key.

    A coarse-hash bucket holding a single candidate never pays for a
    canonical key; the first collision converts it to a key-indexed dict.
    """

    def __init__(self):
        self.exact: Dict[NeighborhoodPattern, _Candidate] = {}
        self.buckets: Dict[int, object] = {}
        self.ordered: List[_Candidate] = []

    def _new(self, q: NeighborhoodPattern) -> _Candidate:
        rec = _Candidate(q)
        self.ordered.append(rec)
        return rec

    def add(self, q: NeighborhoodPattern) -> _Candidate:
        rec = self.exact.get(q)
        if rec is not None:
            return rec
        h = coarse_hash(q)
        bucket = self.buckets.get(h)
        if bucket is None:
            rec = self.buckets[h] = self._new(q)
        else:
            if isinstance(bucket, _Candidate):
                bucket = self.buckets[h] = {bucket.get_key(): bucket}
            key, form = canonicalize(q)
            rec = bucket.get(key)
            if rec is None:
                rec = bucket[key] = self._new(q)
                rec.key, rec.form = key, form
        self.exact[q] = rec
        return rec


def _sort_level(entries: List[FrequentPattern]) -> List[FrequentPattern]:
    return sorted(entries, key=lambda fp: (-fp.support, fp.key))


def mine(g: LabeledGraph, cfg: MiningConfig) -> MiningResult:
    """Find every frequent neighborhood pattern of size <= ``cfg.max_size``."""
    universe, tau = resolve_universe(g, cfg)
    result = MiningResult(levels={}, tau=tau, universe_size=len(universe))

    t0 = time.perf_counter()
    paths_by_size: Dict[int, List[FrequentPattern]] = {}
    for path, vids in frequent_paths(
        g, tau, cfg.max_size, universe, cfg.use_vid, result.path_stats
    ):
        key, form = canonicalize(path.to_pattern())
        paths_by_size.setdefault(path.size, []).append(FrequentPattern(form, len(vids), key, vids, True))
    first = LevelStats(level=1)
    first.frequent = first.paths = len(paths_by_size.get(1, []))
    first.millis = (time.perf_counter() - t0) * 1000
    result.stats.append(first)

    prev = paths_by_size.get(1, [])
    result.levels[1] = prev
    for k in range(2, cfg.max_size + 1):
        if not prev:
            break
        t0 = time.perf_counter()
        st = LevelStats(level=k)
        frags = [_fragments(fp.pattern) for fp in prev]
        cores = [{key for _, _, _, key in fr} for fr in frags]
        pool = _CandidatePool()
        for i, j in _joinable_pairs(cores):
            st.pairs += 1
            if cfg.use_vid:
                common = vid_prune(prev[i].vids, prev[j].vids, tau)
                if common is None:
                    st.pairs_pruned += 1
                    continue
            else:
                common = universe
            # No validity filter needed: p2 is a valid pattern and the join
            # only adds one element on its vertices or on one new vertex
            # attached by that element, so every result stays connected and
            # loop-free.
            for q in _join_fragments(frags[i], prev[j].pattern, cores[j]):
                rec = pool.add(q)
                rec.verify = common if rec.verify is None else intersect(rec.verify, common)

        level: List[FrequentPattern] = []
        seen_keys = set()
        for rec in pool.ordered:
            st.candidates += 1
            if len(rec.verify) < tau:
                st.pruned += 1
                continue
            st.verified += 1
            st.vertex_checks += len(rec.verify)
            vids = matches(rec.pattern, g, rec.verify)
            if len(vids) >= tau:
                key = rec.get_key()
                seen_keys.add(key)
                level.append(FrequentPattern(rec.get_form(), len(vids), key, vids))
        for fp in paths_by_size.get(k, []):
            if fp.key not in seen_keys:
                st.paths += 1
                level.append(fp)
        level = _sort_level(level)
        st.frequent = len(level)
        st.millis = (time.perf_counter() - t0) * 1000
        result.stats.append(st)
        log.debug("level %d: %s", k, st)
        result.levels[k] = level
        prev = level

    if not cfg.retain_vidlists:
        result.levels = {
            k: [FrequentPattern(fp.pattern, fp.support, fp.key, None, fp.is_path) for fp in v]
            for k, v in result.levels.items()
        }
    result.levels = {k: _sort_level(v) for k, v in result.levels.items() if v}
    return result


def count_pattern_types(patterns: Sequence[FrequentPattern]) -> Dict[str, int]:
    """Counts of path, tree and cyclic patterns."""
    counts = {"path": 0, "tree": 0, "cyclic": 0}
    for fp in patterns:
        counts[pattern_type(fp.pattern)] += 1
    return counts
