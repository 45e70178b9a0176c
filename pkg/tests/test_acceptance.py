"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to
see the lines live) or ``python tests/test_acceptance.py``. The large
performance case is included; it takes about a minute on one core.
"""

from __future__ import annotations

import itertools
import json
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from conftest import gnp

from kcm import (
    CandidateSet,
    CoreState,
    Graph,
    SamplingPlan,
    ScInstance,
    baseline_rd,
    build_setcover_gadget,
    compute_vs,
    exact_kcm,
    exact_shapley,
    extract_kcore,
    greedy_cut,
    kcm_objective,
    kcore_decompose,
    local_update,
    naive_kcore,
    sample_size,
    shapley_cut,
)
from kcm.cli import main as cli_main
from kcm.gadgets import has_cover


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}")
        assert ok, detail

    return emit


def random_instance(rng: np.random.Generator, n_lo=5, n_hi=200, p_lo=0.02, p_hi=0.3):
    n = int(rng.integers(n_lo, n_hi + 1))
    p = float(rng.uniform(p_lo, p_hi))
    return gnp(n, p, int(rng.integers(2**31)))


def without(g: Graph, ids) -> Graph:
    keep = np.ones(g.m, dtype=bool)
    keep[list(ids)] = False
    return Graph(g.n, g.edges[keep])


def test_c01_decomposition_matches_naive(report):
    rng = np.random.default_rng(1001)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        g = random_instance(rng)
        dec = kcore_decompose(g)
        for k in range(1, dec.k_max + 1):
            if set(dec.members(k).tolist()) != naive_kcore(g, k):
                bad += 1
                break
    dt = time.perf_counter() - t0
    report(1, bad == 0 and dt < 60, f"1000 graphs, {bad} mismatches, {dt:.1f}s (< 60s)")


def test_c02_local_update_matches_recompute(report):
    rng = np.random.default_rng(1002)
    bad = trials = 0
    while trials < 500:
        g = random_instance(rng, 10, 80, 0.05, 0.3)
        k = int(rng.integers(2, max(3, g.core.k_max + 1)))
        state = CoreState(g, k)
        if state.edge_ids().size < 5:
            continue
        trials += 1
        deleted = []
        for _ in range(5):
            alive = state.edge_ids()
            if alive.size == 0:
                break
            e = int(rng.choice(alive))
            local_update(e, state)
            deleted.append(e)
        sub = extract_kcore(without(g, deleted), k)
        if not np.array_equal(state.nodes(), sub.nodes):
            bad += 1
            continue
        # edge ids of G^B map back to G by skipping the deleted ones
        kept = np.flatnonzero(~np.isin(np.arange(g.m), deleted))
        if not np.array_equal(np.sort(state.edge_ids()), np.sort(kept[sub.edge_ids])):
            bad += 1
    report(2, bad == 0, f"{trials} five-deletion sequences, {bad} mismatches")


def test_c03_vulnerable_set(report):
    rng = np.random.default_rng(1003)
    bad = trials = 0
    while trials < 1000:
        g = random_instance(rng, 5, 120, 0.03, 0.3)
        k = int(rng.integers(1, g.core.k_max + 2))
        state = CoreState(g, k)
        alive = state.edge_ids()
        if alive.size == 0:
            continue
        trials += 1
        e = int(rng.choice(alive))
        expected = naive_kcore(g, k) - naive_kcore(g, k, [e])
        if compute_vs(e, state) != expected:
            bad += 1
    report(3, bad == 0, f"{trials} (graph, k, e) trials, {bad} mismatches")


def test_c04_exhaustive_shapley_agreement(report):
    rng = np.random.default_rng(1004)
    worst, sums_ok, done = 0.0, True, 0
    while done < 50:
        g = random_instance(rng, 12, 40, 0.15, 0.4)
        k = int(rng.integers(2, g.core.k_max + 1)) if g.core.k_max >= 2 else 0
        if k == 0 or len(CandidateSet.all_core_edges(g, k)) < 6:
            continue
        cs = CandidateSet.random(g, k, 6, int(rng.integers(2**31)))
        sol = shapley_cut(g, k, 1, cs, SamplingPlan(exhaustive=True))
        assert sol.samples == 720
        exact = exact_shapley(g, k, cs)
        ref = np.array([float(exact[e]) for e in cs.edge_ids])
        worst = max(worst, float(np.max(np.abs(sol.candidate_scores - ref))))
        sums_ok &= sum(exact.values(), Fraction(0)) == kcm_objective(g, k, cs.edge_ids)
        done += 1
    ok = worst <= 1e-9 and sums_ok
    report(4, ok, f"50 instances, max |walk - exact| = {worst:.2e}, efficiency exact: {sums_ok}")


def test_c05_sampling_guarantee(report):
    g = gnp(40, 0.25, 5)
    k = 4
    cs = CandidateSet.random(g, k, 6, 3)
    exact = exact_shapley(g, k, cs)
    phi = np.array([float(exact[e]) for e in cs.edge_ids])
    n_k = int(np.count_nonzero(g.core.core_number >= k))
    s = sample_size(6, 0.2, 1)
    t0 = time.perf_counter()
    violations = 0
    for seed in range(200):
        est = shapley_cut(g, k, 1, cs, SamplingPlan(epsilon=0.2, ell=1, seed=seed)).candidate_scores
        violations += float(np.max(np.abs(est - phi))) >= 0.2 * n_k
    dt = time.perf_counter() - t0
    rate = violations / 200
    ok = rate <= 1 / 3 and dt < 120 and s == 45
    report(5, ok, f"s={s}, N_k={n_k}, violation rate {rate:.3f} (<= 1/3), {dt:.1f}s (< 120s)")


def test_c06_pruning_invariance(report):
    rng = np.random.default_rng(1006)
    bad = done = 0
    while done < 100:
        g = random_instance(rng, 20, 120, 0.05, 0.25)
        k = int(rng.integers(2, g.core.k_max + 1)) if g.core.k_max >= 2 else 0
        if k == 0:
            continue
        b = int(rng.integers(1, 8))
        plan = SamplingPlan(samples=30, seed=int(rng.integers(1000)))
        outs = []
        for prune in (True, False):
            gc = greedy_cut(g, k, b, prune=prune)
            sv = shapley_cut(g, k, b, plan=plan, prune=prune)
            outs.append((gc.edge_ids.tolist(), gc.scores.tolist(),
                         sv.edge_ids.tolist(), sv.scores.tolist(), sv.candidate_scores.tolist()))
        bad += outs[0] != outs[1]
        done += 1
    report(6, bad == 0, f"{done} instances, {bad} differ between pruning on and off")


def test_c07_sv_near_opt(report):
    rng = np.random.default_rng(1007)
    ratios, sv_ge_rd, trials = [], 0, 0
    while trials < 30:
        # sparse enough that most 3-cores are fragile (OPT > 0)
        g = gnp(100, 0.045, int(rng.integers(2**31)))
        if len(CandidateSet.all_core_edges(g, 3)) < 12:
            continue
        cs = CandidateSet.random(g, 3, 12, int(rng.integers(2**31)))
        opt = exact_kcm(g, 3, 3, cs).objective
        sv = shapley_cut(g, 3, 3, cs, SamplingPlan(seed=trials)).objective
        rd = baseline_rd(g, 3, 3, cs, seed=trials).objective
        ratios.append(1.0 if opt == 0 else sv / opt)
        sv_ge_rd += sv >= rd
        trials += 1
    med = float(np.median(ratios))
    frac = sv_ge_rd / trials
    report(7, med >= 0.85 and frac >= 0.9,
           f"30 graphs, median SV/OPT = {med:.3f} (>= 0.85), SV >= RD in {frac:.0%} (>= 90%)")


def test_c08_set_cover_gadget(report):
    inst = ScInstance(4, ({0}, {0, 1, 3}, {2}))
    gg = build_setcover_gadget(inst)
    cs = CandidateSet(gg.graph, 3, gg.candidates)
    n, m, b = 4, 3, 2
    target = 2 * b * n + n * (m + 1)
    opt = exact_kcm(gg.graph, 3, b, cs).objective
    # independent exhaustive check of the cover
    cover = has_cover(inst, b)
    covers = [c for c in itertools.combinations(range(m), b)
              if set().union(*(inst.subsets[i] for i in c)) == set(range(n))]
    ok = target == 32 and opt == 32 and cover and covers == [(1, 2)]
    report(8, ok, f"OPT objective {opt} == 2bn+n(m+1) = {target}, size-2 cover exists: {cover}")


def er_graph(n: int, m: int, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    need = m
    pairs = np.empty((0, 2), dtype=np.int64)
    while len(pairs) < m:
        cand = rng.integers(0, n, size=(int(need * 1.05) + 10, 2))
        cand = cand[cand[:, 0] != cand[:, 1]]
        cand.sort(axis=1)
        pairs = np.unique(np.concatenate([pairs, cand]), axis=0)
        need = m - len(pairs)
    pairs = pairs[rng.permutation(len(pairs))[:m]]
    return Graph(n, pairs)


def test_c09_performance(report):
    g = er_graph(60_000, 800_000, 2024)
    t0 = time.perf_counter()
    sol = shapley_cut(g, 5, 50, plan=SamplingPlan(epsilon=0.2, ell=1, seed=42))
    dt = time.perf_counter() - t0
    ok = dt < 600 and len(sol.edge_ids) == 50
    report(9, ok, f"n={g.n}, m={g.m}, k_max={g.core.k_max}, s={sol.samples}, "
                  f"objective {sol.objective}, {dt:.1f}s (< 600s)")


def test_c10_cli_determinism(report, tmp_path):
    g = gnp(300, 0.04, 10)
    src = tmp_path / "g.txt"
    src.write_text("".join(f"{u} {v}\n" for u, v in g.edges.tolist()))
    runs = {
        "decompose": ["decompose", "--input", str(src), "--format", "json"],
        "minimize-sv": ["minimize", "--input", str(src), "--k", "4", "--b", "5", "--epsilon", "0.2", "--seed", "7"],
        "minimize-gc": ["minimize", "--input", str(src), "--k", "4", "--b", "5", "--algo", "gc"],
        "minimize-rd": ["minimize", "--input", str(src), "--k", "4", "--b", "5", "--algo", "rd", "--seed", "3"],
        "profile": ["profile", "--input", str(src), "--k", "3:5", "--b", "0:10:5", "--epsilon", "0.3",
                    "--format", "json"],
    }
    differing = []
    for name, argv in runs.items():
        blobs = []
        for i, threads in enumerate((1, 4, 1)):
            out = tmp_path / f"{name}-{i}.out"
            extra = [] if name == "decompose" else ["--threads", str(threads)]
            assert cli_main(argv + extra + ["--out", str(out)]) == 0
            blobs.append(out.read_bytes())
        if len(set(blobs)) != 1:
            differing.append(name)
        json.loads(blobs[0])
    report(10, not differing,
           f"{len(runs)} invocations x 3 runs (threads 1/4/1), byte-identical; differing: {differing or 'none'}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
