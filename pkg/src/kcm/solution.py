"""Candidate sets, sampling plans and solver results."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .core import kcore_decompose
from .graph import Graph, MissingEdgeError

__all__ = [
    "CandidateSet",
    "SamplingPlan",
    "Solution",
    "kcm_objective",
    "sample_size",
]


def kcm_objective(g: Graph, k: int, edge_ids: Iterable[int]) -> int:
    """``N_k(G) - N_k(G^B)``, recomputed from scratch on ``G^B``."""
    ids = np.asarray(list(edge_ids), dtype=np.int64)
    before = int(np.count_nonzero(g.core.core_number >= k))
    if ids.size == 0:
        return 0
    keep = np.ones(g.m, dtype=bool)
    keep[ids] = False
    after = kcore_decompose(Graph(g.n, g.edges[keep], _trusted=True))
    return before - int(np.count_nonzero(after.core_number >= k))


def sample_size(gamma_size: int, epsilon: float, ell: int = 1) -> int:
    """Permutations needed so every estimate is within ``epsilon * N_k``
    with probability at least ``1 - 2 |Gamma|^-ell``.

    >>> sample_size(100, 0.05, 1)
    1843
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if ell < 1:
        raise ValueError(f"ell must be a positive integer, got {ell}")
    if gamma_size < 2:
        raise ValueError(f"gamma_size must be >= 2, got {gamma_size}")
    return max(1, math.ceil((ell + 1) * math.log(gamma_size) / (2 * epsilon**2)))


@dataclass(frozen=True)
class SamplingPlan:
    """How many permutations to draw and from which seed.

    ``samples`` overrides the bound-derived count; ``exhaustive`` walks every
    permutation of the candidates instead of sampling (small sets only).
    """

    epsilon: float = 0.05
    ell: int = 1
    samples: int | None = None
    seed: int = 42
    exhaustive: bool = False

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.ell < 1:
            raise ValueError(f"ell must be a positive integer, got {self.ell}")
        if self.samples is not None and self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")

    def resolve(self, gamma_size: int) -> int:
        if self.exhaustive:
            return math.factorial(gamma_size)
        if self.samples is not None:
            return self.samples
        if gamma_size < 2:
            return 1
        return sample_size(gamma_size, self.epsilon, self.ell)


class CandidateSet:
    """Candidate edges inside ``C_k(G)``, held as ascending edge ids.

    Position ``i`` is the stable index of ``edge_ids[i]``; since edge ids
    follow lexicographic label order, position order is the tie-break order.
    """

    def __init__(self, g: Graph, k: int, edge_ids: Iterable[int]):
        ids = np.asarray(list(edge_ids) if not isinstance(edge_ids, np.ndarray) else edge_ids,
                         dtype=np.int64).ravel()
        if ids.size and (ids.min() < 0 or ids.max() >= g.m):
            raise MissingEdgeError(int(ids[(ids < 0) | (ids >= g.m)][0]))
        uniq = np.unique(ids)
        if len(uniq) != len(ids):
            raise ValueError("candidate set contains duplicate edges")
        core = g.core.core_number
        outside = (core[g.edges[uniq, 0]] < k) | (core[g.edges[uniq, 1]] < k)
        if outside.any():
            bad = g.edge_labels(int(uniq[outside][0]))
            raise ValueError(f"candidate edge {bad} is not inside the {k}-core")
        self.graph = g
        self.k = int(k)
        self.edge_ids = uniq
        self.edge_ids.setflags(write=False)

    @classmethod
    def all_core_edges(cls, g: Graph, k: int) -> CandidateSet:
        core = g.core.core_number
        inside = (core[g.edges[:, 0]] >= k) & (core[g.edges[:, 1]] >= k)
        return cls(g, k, np.flatnonzero(inside))

    @classmethod
    def from_pairs(cls, g: Graph, k: int, pairs: Iterable[tuple], by_label: bool = True) -> CandidateSet:
        if by_label:
            ids = [g.edge_id_by_label(a, b) for a, b in pairs]
        else:
            ids = [g.edge_id(int(a), int(b)) for a, b in pairs]
        return cls(g, k, ids)

    @classmethod
    def random(cls, g: Graph, k: int, size: int, seed: int) -> CandidateSet:
        """``size`` core edges drawn uniformly without replacement."""
        pool = cls.all_core_edges(g, k).edge_ids
        rng = np.random.default_rng(seed)
        size = min(size, len(pool))
        return cls(g, k, rng.choice(pool, size=size, replace=False))

    def __len__(self) -> int:
        return len(self.edge_ids)

    def pairs(self) -> list[tuple[int, int]]:
        return [tuple(map(int, self.graph.edges[e])) for e in self.edge_ids]

    def __repr__(self) -> str:
        return f"CandidateSet(k={self.k}, size={len(self)})"


@dataclass
class Solution:
    """Edges chosen by a solver, in rank order, with their scores."""

    algorithm: str
    k: int
    b: int
    edge_ids: np.ndarray
    objective: int
    n_k: int
    scores: np.ndarray
    candidate_scores: np.ndarray | None = None
    seed: int | None = None
    epsilon: float | None = None
    ell: int | None = None
    samples: int | None = None
    wall_time_ms: float | None = None
    warning: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def dn_percent(self) -> float:
        return 100.0 * self.objective / self.n_k if self.n_k else 0.0

    def edges(self, g: Graph) -> list[tuple]:
        return [g.edge_labels(int(e)) for e in self.edge_ids]

    def score_map(self, g: Graph) -> dict[tuple, float]:
        return dict(zip(self.edges(g), map(float, self.scores)))

    def to_dict(self, g: Graph) -> dict:
        edges = self.edges(g)
        d = {
            "algorithm": self.algorithm,
            "k": self.k,
            "b": self.b,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "ell": self.ell,
            "s": self.samples,
            "edges": [list(e) for e in edges],
            "objective": self.objective,
            "dn_percent": self.dn_percent,
            "per_edge_score": [[a, b, float(s)] for (a, b), s in zip(edges, self.scores)],
            "wall_time_ms": self.wall_time_ms,
        }
        if self.warning:
            d["warning"] = self.warning
        return d

    def to_json(self, g: Graph) -> str:
        return json.dumps(self.to_dict(g), indent=2) + "\n"
