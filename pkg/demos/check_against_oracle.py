"""
Cross-checking the miner against brute force
============================================

The oracle enumerates patterns one element at a time and counts matches by
plain generate-and-test. On small graphs both must agree exactly.
"""

from nbmine import MiningConfig, mine
from nbmine.oracle import corpus, enumerate_patterns

for i, g in enumerate(corpus(seed=3, count=5)):
    for tau in (1, 2, 3):
        got = mine(g, MiningConfig(tau=tau, max_size=4)).supports()
        want = {k: s for k, (_, s) in enumerate_patterns(g, 4, tau).items()}
        status = "ok" if got == want else "MISMATCH"
        print(f"graph {i} ({g.vertex_count} v, {len(g.edges)} e) tau={tau}: {len(got)} patterns {status}")
