"""
How much work VID lists save
============================

Each frequent pattern remembers which pivots it matched. Two patterns
whose lists barely overlap cannot produce a frequent child, so their join
is skipped, and surviving children are only checked at the shared pivots.
"""

import random
import time

from nbmine import MiningConfig, mine
from nbmine.oracle import random_graph

g = random_graph(random.Random(1), 10_000, 40_000, 10, 10, label_prob=0.1)
print(f"{g.vertex_count} vertices, {len(g.edges)} edges")

for use_vid in (True, False):
    cfg = MiningConfig(tau=150, pivot_label="L0", max_size=4, use_vid=use_vid)
    t0 = time.perf_counter()
    r = mine(g, cfg)
    print(f"\nVID {'on' if use_vid else 'off'}: {time.perf_counter() - t0:.2f}s, "
          f"{len(r.patterns())} patterns")
    for st in r.stats[1:]:
        print(f"  level {st.level}: pairs={st.pairs} skipped={st.pairs_pruned} "
              f"candidates={st.candidates} verified={st.verified} frequent={st.frequent}")
