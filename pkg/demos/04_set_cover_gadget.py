"""
A set cover instance as a k-core graph
======================================

Each subset becomes a candidate edge. Cutting the edges of a cover
collapses the most nodes, so the best b cuts reveal whether a size-b
cover exists.
"""

import itertools

from kcm import (
    CandidateSet,
    ScInstance,
    build_setcover_gadget,
    exact_kcm,
    kcm_objective,
)

# items u1..u4 as 0..3; S1={u1}, S2={u1,u2,u4}, S3={u3}
inst = ScInstance(4, ({0}, {0, 1, 3}, {2}))
gg = build_setcover_gadget(inst)
g = gg.graph
print(g, " min core number:", int(g.core.core_number.min()))
print("candidates:", gg.candidate_pairs())

n, m = inst.n_items, len(inst.subsets)
for b in (1, 2):
    for chosen in itertools.combinations(range(m), b):
        ids = [gg.candidates[i] for i in chosen]
        print(f"  cut S{[i + 1 for i in chosen]} -> {kcm_objective(g, 3, ids)} nodes")
    best = exact_kcm(g, 3, b, CandidateSet(g, 3, gg.candidates))
    print(f"b={b}: best {best.objective}, cover value {2 * b * n + n * (m + 1)}")
