"""Writes random small graphs with their planarity as decided by networkx.

Output lines: `n;a-b,c-d,...;0|1`. Used as an oracle by the planarity tests.
"""
import random
import sys

import networkx as nx

rng = random.Random(20240611)
lines = []
for _ in range(600):
    n = rng.randint(5, 13)
    # densities around the planarity threshold give a mix of outcomes
    p = rng.uniform(0.2, 0.7)
    g = nx.gnp_random_graph(n, p, seed=rng.randrange(1 << 30))
    planar, _ = nx.check_planarity(g)
    edges = ",".join(f"{a}-{b}" for a, b in sorted(g.edges()))
    lines.append(f"{n};{edges};{int(planar)}")
out = sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/data/planarity_cases.txt"
with open(out, "w") as f:
    f.write("\n".join(lines) + "\n")
