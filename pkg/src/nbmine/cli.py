"""Command-line front end.

    nbmine VERTEX_LABELS.tsv EDGES.tsv --min-support 2 [--max-size 4]
    nbmine VERTEX_LABELS.tsv EDGES.tsv --min-ratio 0.5 --pivot-label Author

Patterns go to ``--output`` (default stdout), per-level statistics to
``--stats`` when given. Exit status: 0 on success, 1 for unreadable or
malformed input, 2 for bad arguments.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Sequence, TextIO

from .builder import PathStats, frequent_paths
from .graph import GraphFormatError, LabeledGraph, load_graph
from .miner import (
    FrequentPattern,
    LevelStats,
    MiningConfig,
    MiningResult,
    count_pattern_types,
    mine,
    resolve_universe,
)
from .pattern import canonicalize, format_pattern


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _ratio(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"must be in (0, 1], got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nbmine", description="Mine frequent neighborhood patterns from a labeled graph."
    )
    ap.add_argument("vertex_label_path", help="TSV of vertex<TAB>label lines")
    ap.add_argument("edge_path", help="TSV of src<TAB>dst<TAB>label lines")
    thr = ap.add_mutually_exclusive_group(required=True)
    thr.add_argument("--min-support", type=_positive_int, help="absolute support threshold")
    thr.add_argument("--min-ratio", type=_ratio, help="threshold as a fraction of the pivot universe")
    ap.add_argument("--pivot-label", help="only vertices with this label may be pivots")
    ap.add_argument("--max-size", type=_positive_int, default=4)
    ap.add_argument("--vid", choices=("on", "off"), default="on", help="VID-list pruning")
    ap.add_argument("--mode", choices=("paths", "full"), default="full")
    ap.add_argument("--output", help="pattern file (default: stdout)")
    ap.add_argument("--stats", help="write per-level statistics here")
    return ap


def _config(args) -> MiningConfig:
    return MiningConfig(
        tau=args.min_support,
        ratio=args.min_ratio,
        pivot_label=args.pivot_label,
        max_size=args.max_size,
        use_vid=args.vid == "on",
    )


def _paths_only(g: LabeledGraph, cfg: MiningConfig) -> MiningResult:
    universe, tau = resolve_universe(g, cfg)
    result = MiningResult(levels={}, tau=tau, universe_size=len(universe), path_stats=PathStats())
    t0 = time.perf_counter()
    for path, vids in frequent_paths(g, tau, cfg.max_size, universe, cfg.use_vid, result.path_stats):
        key, form = canonicalize(path.to_pattern())
        fp = FrequentPattern(form, len(vids), key, None, True)
        result.levels.setdefault(path.size, []).append(fp)
    millis = (time.perf_counter() - t0) * 1000
    for k in sorted(result.levels):
        result.levels[k].sort(key=lambda fp: (-fp.support, fp.key))
        result.stats.append(LevelStats(level=k, frequent=len(result.levels[k]), paths=len(result.levels[k])))
    if result.stats:
        result.stats[0].millis = millis
    return result


def write_patterns(result: MiningResult, g: LabeledGraph, out: TextIO) -> None:
    vnames = list(g.vertex_label_vocab)
    enames = list(g.edge_label_vocab)
    for fp in result.patterns():
        out.write(format_pattern(fp.pattern, vnames, enames, fp.support, result.ratio(fp)))


def write_stats(result: MiningResult, out: TextIO) -> None:
    out.write(f"tau={result.tau} universe={result.universe_size}\n")
    for st in result.stats:
        out.write(
            f"level={st.level} candidates={st.candidates} pruned={st.pruned} "
            f"verified={st.verified} frequent={st.frequent} millis={st.millis:.1f}\n"
        )
    types = count_pattern_types(result.patterns())
    total = sum(types.values()) or 1
    out.write(" ".join(f"{t}={c}" for t, c in types.items()))
    out.write(" " + " ".join(f"{t}_pct={100 * c / total:.1f}" for t, c in types.items()) + "\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        with open(args.vertex_label_path, encoding="utf-8") as vf, open(
            args.edge_path, encoding="utf-8"
        ) as ef:
            g = load_graph(vf, ef)
    except (GraphFormatError, OSError) as exc:
        print(f"nbmine: {exc}", file=sys.stderr)
        return 1

    try:
        cfg = _config(args)
        result = _paths_only(g, cfg) if args.mode == "paths" else mine(g, cfg)
    except ValueError as exc:
        print(f"nbmine: {exc}", file=sys.stderr)
        return 2

    if args.output:
        with open(args.output, "w", encoding="utf-8") as out:
            write_patterns(result, g, out)
    else:
        write_patterns(result, g, sys.stdout)
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as out:
            write_stats(result, out)
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
