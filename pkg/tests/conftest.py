from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from kcm import Graph


def complete(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(a + offset, b + offset) for a, b in itertools.combinations(range(n), 2)]


def cycle(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + (i + 1) % n) for i in range(n)]


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph(n, np.stack([iu[keep], ju[keep]], axis=1))


def bridged_k4s() -> Graph:
    """Two K4s {a,b,c,d} and {e,f,g,h} joined by (c,e) and (d,f); all in the 3-core."""
    a, b, c, d, e, f, g, h = range(8)
    edges = complete(4) + complete(4, offset=4) + [(c, e), (d, f)]
    return Graph.from_edges(edges, n=8)


@pytest.fixture
def k4() -> Graph:
    return Graph.from_edges(complete(4))


@pytest.fixture
def k5() -> Graph:
    return Graph.from_edges(complete(5))


@pytest.fixture
def two_cycles() -> Graph:
    return Graph.from_edges(cycle(4) + cycle(4, offset=4))


@st.composite
def graphs(draw, max_n: int = 30):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = draw(st.lists(pairs, max_size=4 * n))
    return Graph.from_edges(edges, n=n)
