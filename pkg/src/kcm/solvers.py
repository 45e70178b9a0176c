"""Budgeted k-core minimisation: Greedy Cut, Shapley Value Cut and baselines.

All solvers pick ``b`` edges out of a :class:`CandidateSet` and return a
:class:`Solution` whose objective is recomputed from scratch on ``G^B``.
Ties are broken by ascending candidate position everywhere.
"""

from __future__ import annotations

import itertools
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels
from .graph import Graph
from .solution import CandidateSet, SamplingPlan, Solution, kcm_objective
from .state import CoreState

__all__ = [
    "baseline_jd",
    "baseline_ld",
    "baseline_rd",
    "greedy_cut",
    "permutation_stream",
    "shapley_cut",
    "shapley_estimates",
]

log = logging.getLogger(__name__)

# bytes of permutation rows materialised per worker batch
_BATCH_BYTES = 32 << 20


def _check_budget(b: int) -> None:
    if b < 1:
        raise ValueError(f"budget b must be >= 1, got {b}")


def _candidates(g: Graph, k: int, candidates: CandidateSet | None) -> CandidateSet:
    if candidates is None:
        return CandidateSet.all_core_edges(g, k)
    if candidates.graph is not g or candidates.k != k:
        raise ValueError("candidate set was built for a different graph or k")
    return candidates


def _n_k(g: Graph, k: int) -> int:
    return int(np.count_nonzero(g.core.core_number >= k))


def _finish(g, k, b, algorithm, chosen, scores, t0, **kw) -> Solution:
    chosen = np.asarray(chosen, dtype=np.int64)
    n_k = _n_k(g, k)
    sol = Solution(
        algorithm=algorithm,
        k=k,
        b=b,
        edge_ids=chosen,
        objective=kcm_objective(g, k, chosen),
        n_k=n_k,
        scores=np.asarray(scores, dtype=np.float64),
        **kw,
    )
    if n_k == 0:
        sol.warning = f"the {k}-core is empty"
    sol.wall_time_ms = (time.perf_counter() - t0) * 1e3
    return sol


def _top(scores: np.ndarray, b: int, descending: bool) -> np.ndarray:
    """Positions of the ``b`` best scores, ties by ascending position."""
    pos = np.arange(len(scores))
    key = -scores if descending else scores
    return np.lexsort((pos, key))[:b]


def greedy_cut(
    g: Graph,
    k: int,
    b: int,
    candidates: CandidateSet | None = None,
    prune: bool = True,
) -> Solution:
    """Repeatedly delete the surviving candidate with the largest vulnerable set.

    Stops early once no candidate is left inside the k-core. ``scores``
    holds the gain of each chosen edge at the moment it was chosen.
    """
    t0 = time.perf_counter()
    _check_budget(b)
    cs = _candidates(g, k, candidates)
    state = CoreState(g, k)
    cand = np.ascontiguousarray(cs.edge_ids)
    dom = np.zeros(g.n, dtype=np.uint8)
    chosen, gains = [], []
    while len(chosen) < b:
        p, gain = _kernels.greedy_round(
            cand, state.k, g.indptr, g.indices, g.slot_edge, g.edges,
            state.node_alive, state.edge_alive, state.deg, prune,
            state._lost, state._mark, state._queue, dom,
        )
        if p < 0:
            break
        removed = state.delete(int(cand[p]))
        assert len(removed) == gain
        chosen.append(int(cand[p]))
        gains.append(gain)
    sol = _finish(g, k, b, "GC", chosen, gains, t0)
    sol.extra["prune"] = prune
    return sol


def permutation_stream(seed: int, index: int, size: int) -> np.ndarray:
    """The ``index``-th sampled permutation for ``seed``.

    Each permutation has its own generator seeded by ``(seed, index)``, so
    the draw does not depend on how permutations are split among workers.
    """
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))
    return rng.permutation(size)


def _walk(state: CoreState, cand: np.ndarray, perms: np.ndarray, prune: bool) -> np.ndarray:
    g = state.graph
    return _kernels.walk_permutations(
        perms, cand, state.k, g.indptr, g.indices, g.slot_edge, g.edges,
        state.node_alive, state.edge_alive, state.deg, prune,
    )


def shapley_estimates(
    g: Graph,
    k: int,
    candidates: CandidateSet | None = None,
    plan: SamplingPlan | None = None,
    prune: bool = True,
    threads: int | None = None,
) -> tuple[np.ndarray, int]:
    """Sampled Shapley value of every candidate and the sample count used.

    Values are aligned with ``candidates.edge_ids``. Within one permutation
    the marginal gain of an edge is the size of the cascade its deletion
    triggers given all earlier edges are already gone; the estimate is the
    mean over permutations.
    """
    cs = _candidates(g, k, candidates)
    plan = plan or SamplingPlan()
    nc = len(cs)
    if nc == 0:
        return np.zeros(0), 0
    s = plan.resolve(nc)
    state = CoreState(g, k)
    cand = np.ascontiguousarray(cs.edge_ids)

    if plan.exhaustive:
        perms = np.array(list(itertools.permutations(range(nc))), dtype=np.int64).reshape(-1, nc)
        return _walk(state, cand, perms, prune) / s, s

    threads = max(1, threads or os.cpu_count() or 1)
    batch = max(1, min(_BATCH_BYTES // (8 * nc), -(-s // threads)))
    starts = range(0, s, batch)

    def run(start: int) -> np.ndarray:
        stop = min(start + batch, s)
        perms = np.empty((stop - start, nc), dtype=np.int64)
        for r, i in enumerate(range(start, stop)):
            perms[r] = permutation_stream(plan.seed, i, nc)
        return _walk(state, cand, perms, prune)

    total = np.zeros(nc, dtype=np.int64)
    if threads == 1 or len(starts) == 1:
        for st in starts:
            total += run(st)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for acc in pool.map(run, starts):
                total += acc
    return total / s, s


def shapley_cut(
    g: Graph,
    k: int,
    b: int,
    candidates: CandidateSet | None = None,
    plan: SamplingPlan | None = None,
    prune: bool = True,
    threads: int | None = None,
) -> Solution:
    """Pick the ``b`` candidates with the largest sampled Shapley values."""
    t0 = time.perf_counter()
    _check_budget(b)
    cs = _candidates(g, k, candidates)
    plan = plan or SamplingPlan()
    phi, s = shapley_estimates(g, k, cs, plan, prune=prune, threads=threads)
    top = _top(phi, b, descending=True)
    log.debug("shapley_cut: |Gamma|=%d s=%d", len(cs), s)
    sol = _finish(
        g, k, b, "SV", cs.edge_ids[top], phi[top], t0,
        candidate_scores=phi, seed=plan.seed, epsilon=plan.epsilon, ell=plan.ell, samples=s,
    )
    sol.extra["prune"] = prune
    return sol


def baseline_ld(g: Graph, k: int, b: int, candidates: CandidateSet | None = None) -> Solution:
    """Lowest ``d(u) + d(v)``, degrees taken inside ``C_k(G)``."""
    t0 = time.perf_counter()
    _check_budget(b)
    cs = _candidates(g, k, candidates)
    deg = CoreState(g, k).deg
    e = g.edges[cs.edge_ids]
    score = (deg[e[:, 0]] + deg[e[:, 1]]).astype(np.float64)
    top = _top(score, b, descending=False)
    return _finish(g, k, b, "LD", cs.edge_ids[top], score[top], t0, candidate_scores=score)


def baseline_jd(g: Graph, k: int, b: int, candidates: CandidateSet | None = None) -> Solution:
    """Lowest Jaccard coefficient of the endpoints' neighbourhoods in ``C_k(G)``.

    ``|N(u) & N(v)| / |N(u) | N(v) - {u, v}|``, scored 0 when the union is empty.
    """
    t0 = time.perf_counter()
    _check_budget(b)
    cs = _candidates(g, k, candidates)
    in_core = (g.core.core_number >= k).astype(np.uint8)
    score = _kernels.jaccard(np.ascontiguousarray(cs.edge_ids), g.edges, g.indptr, g.indices, in_core)
    top = _top(score, b, descending=False)
    return _finish(g, k, b, "JD", cs.edge_ids[top], score[top], t0, candidate_scores=score)


def baseline_rd(
    g: Graph, k: int, b: int, candidates: CandidateSet | None = None, seed: int = 42
) -> Solution:
    """``b`` candidates uniformly at random without replacement."""
    t0 = time.perf_counter()
    _check_budget(b)
    cs = _candidates(g, k, candidates)
    rng = np.random.default_rng(seed)
    take = rng.choice(len(cs), size=min(b, len(cs)), replace=False) if len(cs) else np.zeros(0, int)
    return _finish(g, k, b, "RD", cs.edge_ids[take], np.zeros(len(take)), t0, seed=seed)
