import numpy as np
import pytest
from conftest import complete, cycle, gnp, graphs
from hypothesis import given, settings
from hypothesis import strategies as st

from kcm import (
    CoreState,
    Graph,
    MissingEdgeError,
    compute_vs,
    extract_kcore,
    local_update,
    naive_kcore,
)


@pytest.mark.parametrize("edge", cycle(4))
def test_vs_cycle_all_nodes(edge):
    g = Graph.from_edges(cycle(4))
    assert compute_vs(edge, CoreState(g, 2)) == {0, 1, 2, 3}


def test_vs_k4_all_nodes(k4):
    state = CoreState(k4, 3)
    for e in complete(4):
        assert compute_vs(e, state) == {0, 1, 2, 3}


def test_vs_k5_empty(k5):
    state = CoreState(k5, 3)
    for e in complete(5):
        assert compute_vs(e, state) == set()


def test_vs_is_read_only(k4):
    state = CoreState(k4, 3)
    before = state.snapshot()
    compute_vs((0, 1), state)
    assert all(np.array_equal(a, b) for a, b in zip(before, state.snapshot()))


def test_vs_rejects_edge_outside_core():
    g = Graph.from_edges(complete(4) + [(3, 4)])
    state = CoreState(g, 3)
    with pytest.raises(MissingEdgeError):
        compute_vs((3, 4), state)
    with pytest.raises(MissingEdgeError):
        local_update((0, 4), state)


def test_local_update_independent_components(two_cycles):
    state = CoreState(two_cycles, 2)
    assert local_update((0, 1), state) == {0, 1, 2, 3}
    assert state.nodes().tolist() == [4, 5, 6, 7]
    with pytest.raises(MissingEdgeError):
        local_update((2, 3), state)


def test_local_update_rollback(two_cycles):
    state = CoreState(two_cycles, 2)
    before = state.snapshot()
    mark = state.checkpoint()
    local_update((4, 5), state)
    state.rollback(mark)
    assert all(np.array_equal(a, b) for a, b in zip(before, state.snapshot()))
    assert state.deleted == []


def _scratch(g, k, deleted):
    return naive_kcore(g, k, deleted)


def test_local_update_matches_recompute_random():
    rng = np.random.default_rng(5)
    for seed in range(20):
        g = gnp(50, 0.12, seed)
        k = 3
        state = CoreState(g, k)
        for _ in range(5):
            alive = state.edge_ids()
            if alive.size == 0:
                break
            state.delete(int(rng.choice(alive)))
            assert set(state.nodes().tolist()) == _scratch(g, k, state.deleted)
            sub = extract_kcore(_delete(g, state.deleted), k)
            assert np.array_equal(state.nodes(), sub.nodes)
            assert np.array_equal(np.sort(state.edge_ids()), _remap(g, state.deleted, sub.edge_ids))


def _delete(g, ids):
    keep = np.ones(g.m, dtype=bool)
    keep[list(ids)] = False
    return Graph(g.n, g.edges[keep])


def _remap(g, deleted, sub_edge_ids):
    keep = np.flatnonzero(~np.isin(np.arange(g.m), deleted))
    return np.sort(keep[sub_edge_ids])


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=25), st.integers(1, 4), st.data())
def test_vs_equals_scratch_difference(g, k, data):
    state = CoreState(g, k)
    alive = state.edge_ids()
    if alive.size == 0:
        return
    e = int(data.draw(st.sampled_from(alive.tolist())))
    before = set(state.nodes().tolist())
    after = naive_kcore(g, k, [e])
    assert compute_vs(e, state) == before - after


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=25), st.integers(1, 4), st.data())
def test_journal_inverse(g, k, data):
    state = CoreState(g, k)
    base = state.snapshot()
    marks = []
    for _ in range(data.draw(st.integers(1, 4))):
        alive = state.edge_ids()
        if alive.size == 0:
            break
        marks.append((state.checkpoint(), state.snapshot()))
        state.delete(int(data.draw(st.sampled_from(alive.tolist()))))
    for mark, snap in reversed(marks):
        state.rollback(mark)
        assert all(np.array_equal(a, b) for a, b in zip(snap, state.snapshot()))
    assert all(np.array_equal(a, b) for a, b in zip(base, state.snapshot()))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=25), st.integers(2, 4))
def test_edge_dominance(g, k):
    state = CoreState(g, k)
    alive = state.edge_ids().tolist()
    zs = {e: set(state.vulnerable_set(e).tolist()) for e in alive}
    for e in alive:
        for e2 in alive:
            u, v = g.edges[e2]
            if u in zs[e] or v in zs[e]:
                assert zs[e2] <= zs[e]


def test_degrees_track_alive_edges():
    g = gnp(40, 0.15, 3)
    state = CoreState(g, 3)
    rng = np.random.default_rng(0)
    for _ in range(6):
        alive = state.edge_ids()
        if alive.size == 0:
            break
        state.delete(int(rng.choice(alive)))
        e = g.edges[state.edge_alive]
        assert np.array_equal(state.deg, np.bincount(e.ravel(), minlength=g.n))
        assert np.all(state.deg[state.node_alive] >= 3)
