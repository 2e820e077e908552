"""Frequent neighborhood pattern mining in a single large labeled graph."""

from .builder import PathPattern, PathStep, edge_step, frequent_paths, label_step, traverse_next_steps
from .graph import (
    GraphFormatError,
    GraphParseError,
    GraphValidationError,
    LabeledGraph,
    VidList,
    intersect,
    load_graph,
    vertices_with_label,
    write_graph,
)
from .isomorphism import embeddings_between, matches, pivoted_subiso_at
from .miner import FrequentPattern, MiningConfig, MiningResult, join, mine, vid_prune
from .pattern import (
    Edge,
    NeighborhoodPattern,
    VertexLabel,
    canonical_key,
    coarse_hash,
    decompositions,
    is_path_pattern,
    remove_element,
)

__version__ = "0.1.0"
