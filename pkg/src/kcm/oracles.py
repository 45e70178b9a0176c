"""Brute-force references: slow on purpose, obvious by construction.

Nothing here touches the compiled kernels or :class:`CoreState`; graphs
are read only through their edge arrays.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph
from .solution import CandidateSet, Solution

__all__ = [
    "OracleBudget",
    "OracleRefused",
    "exact_kcm",
    "exact_shapley",
    "naive_kcore",
]


class OracleRefused(RuntimeError):
    """The instance is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OracleBudget:
    max_gamma_for_shapley: int = 8
    max_subsets_for_opt: int = 10**7


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def naive_kcore(g: Graph, k: int, removed: Iterable[int] = (), order: Sequence[int] | None = None) -> set[int]:
    """Fixed point of full-scan peeling: drop any node with fewer than ``k``
    surviving neighbours until nothing changes.

    ``removed`` lists edge ids to leave out (the graph ``G^B``); ``order``
    sets the scan order, which must not affect the result.
    """
    skip = set(int(e) for e in removed)
    adj = _adjacency(g.n, (tuple(e) for i, e in enumerate(g.edges.tolist()) if i not in skip))
    alive = set(range(g.n))
    scan = list(range(g.n)) if order is None else list(order)
    changed = True
    while changed:
        changed = False
        for v in scan:
            if v in alive and len(adj[v] & alive) < k:
                alive.discard(v)
                changed = True
    return alive


def _value_fn(g: Graph, k: int):
    base = len(naive_kcore(g, k))
    cache: dict[frozenset, int] = {}

    def value(edge_ids: frozenset) -> int:
        if edge_ids not in cache:
            cache[edge_ids] = base - len(naive_kcore(g, k, edge_ids))
        return cache[edge_ids]

    return value, base


def exact_kcm(
    g: Graph,
    k: int,
    b: int,
    candidates: CandidateSet | None = None,
    budget: OracleBudget = OracleBudget(),
) -> Solution:
    """Best size-``b`` subset of the candidates by exhaustive search.

    Subsets are visited in lexicographic position order and the first
    maximiser is kept.
    """
    t0 = time.perf_counter()
    if b < 1:
        raise ValueError(f"budget b must be >= 1, got {b}")
    cs = candidates if candidates is not None else CandidateSet.all_core_edges(g, k)
    ids = cs.edge_ids.tolist()
    size = min(b, len(ids))
    count = math.comb(len(ids), size)
    if count > budget.max_subsets_for_opt:
        raise OracleRefused(f"{count} subsets exceed the cap of {budget.max_subsets_for_opt}")
    value, n_k = _value_fn(g, k)
    best, best_val = (), -1
    for combo in itertools.combinations(ids, size):
        val = value(frozenset(combo))
        if val > best_val:
            best, best_val = combo, val
    return Solution(
        algorithm="OPT",
        k=k,
        b=b,
        edge_ids=np.array(best, dtype=np.int64),
        objective=max(best_val, 0),
        n_k=n_k,
        scores=np.zeros(len(best)),
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
        warning=None if n_k else f"the {k}-core is empty",
    )


def exact_shapley(
    g: Graph,
    k: int,
    candidates: CandidateSet | None = None,
    budget: OracleBudget = OracleBudget(),
    order: Sequence[int] | None = None,
) -> dict[int, Fraction]:
    """Exact Shapley value of each candidate edge id, as a ``Fraction``.

    Every permutation of the candidates is enumerated; coalition values come
    from scratch peeling, memoised per subset. ``order`` permutes the
    enumeration order of the candidates.
    """
    cs = candidates if candidates is not None else CandidateSet.all_core_edges(g, k)
    ids = cs.edge_ids.tolist()
    if len(ids) > budget.max_gamma_for_shapley:
        raise OracleRefused(f"|Gamma|={len(ids)} exceeds the cap of {budget.max_gamma_for_shapley}")
    if order is not None:
        ids = [ids[i] for i in order]
    value, _ = _value_fn(g, k)
    totals = dict.fromkeys(ids, 0)
    for perm in itertools.permutations(ids):
        prefix: frozenset = frozenset()
        before = 0
        for e in perm:
            prefix = prefix | {e}
            after = value(prefix)
            totals[e] += after - before
            before = after
    nperm = math.factorial(len(ids))
    return {e: Fraction(t, nperm) for e, t in sorted(totals.items())}


def exact_shapley_solution(g: Graph, k: int, b: int, candidates: CandidateSet | None = None,
                           budget: OracleBudget = OracleBudget()) -> Solution:
    """Top-``b`` candidates by exact Shapley value (ties by position)."""
    t0 = time.perf_counter()
    if b < 1:
        raise ValueError(f"budget b must be >= 1, got {b}")
    cs = candidates if candidates is not None else CandidateSet.all_core_edges(g, k)
    phi = exact_shapley(g, k, cs, budget)
    ids = cs.edge_ids.tolist()
    ranked = sorted(range(len(ids)), key=lambda p: (-phi[ids[p]], p))[:b]
    chosen = [ids[p] for p in ranked]
    value, n_k = _value_fn(g, k)
    return Solution(
        algorithm="EXACT_SV",
        k=k,
        b=b,
        edge_ids=np.array(chosen, dtype=np.int64),
        objective=value(frozenset(chosen)) if chosen else 0,
        n_k=n_k,
        scores=np.array([float(phi[e]) for e in chosen]),
        candidate_scores=np.array([float(phi[e]) for e in ids]),
        samples=math.factorial(len(ids)),
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
        warning=None if n_k else f"the {k}-core is empty",
    )
