"""
How fragile is each core level?
===============================

Sweep k and the edge budget, recording the share of the k-core that
disappears. Higher cores tend to be thinner and crumble sooner.
"""

import numpy as np

from kcm import Graph, SamplingPlan, resilience_profile

rng = np.random.default_rng(11)
n, p = 500, 0.02
iu, ju = np.triu_indices(n, 1)
keep = rng.random(len(iu)) < p
g = Graph(n, np.stack([iu[keep], ju[keep]], axis=1))
print(g, " k_max =", g.core.k_max)

ks = list(range(2, g.core.k_max + 1))
budgets = [0, 10, 20, 40]
grid = resilience_profile(g, ks, budgets, "SV", SamplingPlan(epsilon=0.2, seed=1))

print("   k " + "".join(f"{'b=' + str(b):>9}" for b in budgets))
for i, k in enumerate(ks):
    print(f"{k:4d} " + "".join(f"{dn:9.2f}" for dn in grid.cells[i]))

# largest single-step jump in DN(%) per k
print("max delta per k:", dict(zip(ks, np.round(grid.deltas.max(axis=1), 2).tolist())))
