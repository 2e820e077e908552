"""
Neighborhood patterns in a tiny citation graph
==============================================

Four authors, eight papers, ``writes`` and ``cites`` edges. Every author
is a candidate pivot, and a pattern's support is the number of authors
whose neighborhood contains it.
"""

from nbmine import MiningConfig, NeighborhoodPattern, canonical_key, matches, mine
from nbmine.miner import count_pattern_types
from nbmine.oracle import toy_db
from nbmine.pattern import format_pattern

g = toy_db()
W = g.edge_label_vocab.id("writes")
C = g.edge_label_vocab.id("cites")
names = lambda vids: [g.vertex_names.name(v) for v in vids]

# An author who wrote two papers, one citing the other.
self_cite = NeighborhoodPattern.build(3, (), [(0, 1, W), (0, 2, W), (2, 1, C)])
print("self-citing authors:", names(matches(self_cite, g)))

# Mine everything of size <= 3 that at least half of the authors share.
result = mine(g, MiningConfig(ratio=0.5, pivot_label="Author", max_size=3))
print(f"tau = {result.tau} of {result.universe_size} authors")

vl, el = list(g.vertex_label_vocab), list(g.edge_label_vocab)
for fp in result.levels[3]:
    print(format_pattern(fp.pattern, vl, el, fp.support, result.ratio(fp)))

print("pattern types:", count_pattern_types(result.patterns()))
print("self-cite reported:", canonical_key(self_cite) in result.supports())
