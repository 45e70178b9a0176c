import itertools
from fractions import Fraction

import pytest
from conftest import complete, cycle, gnp, graphs
from hypothesis import given, settings
from hypothesis import strategies as st

from kcm import (
    CandidateSet,
    Graph,
    OracleBudget,
    OracleRefused,
    SamplingPlan,
    baseline_jd,
    baseline_ld,
    baseline_rd,
    exact_kcm,
    exact_shapley,
    greedy_cut,
    kcm_objective,
    naive_kcore,
    shapley_cut,
)


def test_naive_examples(k4, k5):
    assert naive_kcore(k4, 3) == {0, 1, 2, 3}
    assert naive_kcore(k4, 4) == set()
    assert naive_kcore(k5, 4) == set(range(5))
    assert naive_kcore(k4, 3, removed=[0]) == set()


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=25), st.integers(1, 5), st.randoms(use_true_random=False))
def test_naive_scan_order_irrelevant(g, k, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    assert naive_kcore(g, k, order=order) == naive_kcore(g, k)


def test_opt_cycles_and_clique():
    g = Graph.from_edges(cycle(4) + cycle(4, offset=4) + complete(5, offset=8))
    assert exact_kcm(g, 2, 1).objective == 4
    cs = CandidateSet.all_core_edges(g, 2)
    full = exact_kcm(g, 2, len(cs))
    assert full.edge_ids.tolist() == cs.edge_ids.tolist()
    assert full.objective == 13


def test_opt_first_maximiser(two_cycles):
    assert exact_kcm(two_cycles, 2, 1).edge_ids.tolist() == [0]


def test_opt_refuses_large():
    g = gnp(40, 0.5, 0)
    with pytest.raises(OracleRefused):
        exact_kcm(g, 3, 20, budget=OracleBudget(max_subsets_for_opt=1000))
    with pytest.raises(OracleRefused):
        exact_shapley(g, 3)


@pytest.mark.parametrize("seed", range(8))
def test_opt_dominates_heuristics(seed):
    g = gnp(30, 0.25, seed)
    k = max(2, g.core.k_max - 1)
    cs = CandidateSet.random(g, k, 10, seed)
    opt = exact_kcm(g, k, 3, cs).objective
    assert opt == max(
        kcm_objective(g, k, c) for c in itertools.combinations(cs.edge_ids, 3)
    )
    for sol in (
        greedy_cut(g, k, 3, cs),
        shapley_cut(g, k, 3, cs, SamplingPlan(samples=30, seed=seed)),
        baseline_ld(g, k, 3, cs),
        baseline_jd(g, k, 3, cs),
        baseline_rd(g, k, 3, cs, seed=seed),
    ):
        assert sol.objective <= opt


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=14), st.integers(2, 3), st.integers(0, 100))
def test_shapley_efficiency(g, k, seed):
    cs = CandidateSet.all_core_edges(g, k)
    if len(cs) > 6:
        cs = CandidateSet.random(g, k, 6, seed)
    phi = exact_shapley(g, k, cs)
    assert all(isinstance(v, Fraction) for v in phi.values())
    assert sum(phi.values()) == kcm_objective(g, k, cs.edge_ids)


def test_shapley_order_independent():
    g = gnp(14, 0.45, 4)
    cs = CandidateSet.random(g, 3, 5, 1)
    assert exact_shapley(g, 3, cs) == exact_shapley(g, 3, cs, order=[4, 2, 0, 3, 1])


def test_shapley_symmetric_edges(k4):
    phi = exact_shapley(k4, 3)
    assert set(phi.values()) == {Fraction(4, 6)}
