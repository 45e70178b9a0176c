"""
Core numbers and edge cascades
==============================

Two 4-cliques tied together by a pair of edges. Every node sits in the
3-core, yet a single well-placed deletion takes half of them out.
"""

import itertools

from kcm import CoreState, Graph, compute_vs, kcore_decompose

# two K4 blocks {0..3} and {4..7}, bridged by (2,4) and (3,5)
edges = list(itertools.combinations(range(4), 2))
edges += list(itertools.combinations(range(4, 8), 2))
edges += [(2, 4), (3, 5)]
g = Graph.from_edges(edges)

dec = kcore_decompose(g)
print("core numbers:", dec.core_number.tolist())
print("k_max:", dec.k_max, " sizes:", dec.core_sizes())

# how much of the 3-core would each edge take with it?
state = CoreState(g, 3)
for e in state.edge_ids():
    u, v = g.edges[e]
    print(f"  delete ({u},{v}) -> lose {sorted(compute_vs(int(e), state))}")

# deleting for real updates the state in place
removed = state.delete((0, 2))
print("after deleting (0,2):", sorted(removed.tolist()), "left the core;",
      "survivors:", state.nodes().tolist())
