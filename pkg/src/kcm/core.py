"""k-core decomposition and k-core extraction."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph

__all__ = [
    "CoreDecomposition",
    "CoreSubgraph",
    "decomposition_csv",
    "decomposition_summary",
    "extract_kcore",
    "kcore_decompose",
]


@dataclass(frozen=True)
class CoreDecomposition:
    """Core number of every node; ``k_max`` is the degeneracy."""

    core_number: np.ndarray
    k_max: int

    def members(self, k: int) -> np.ndarray:
        """Nodes of the k-core, ascending."""
        return np.flatnonzero(self.core_number >= k)

    def core_sizes(self) -> dict[int, int]:
        """``N_k`` for every ``k`` in ``1..k_max``."""
        counts = np.bincount(self.core_number, minlength=self.k_max + 1)
        suffix = np.cumsum(counts[::-1])[::-1]
        return {k: int(suffix[k]) for k in range(1, self.k_max + 1)}


@dataclass(frozen=True)
class CoreSubgraph:
    """Induced subgraph on the nodes of core number at least ``k``."""

    k: int
    nodes: np.ndarray
    edge_ids: np.ndarray
    degrees: np.ndarray  # aligned with ``nodes``

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edge_ids)


def kcore_decompose(g: Graph) -> CoreDecomposition:
    if g.n == 0:
        return CoreDecomposition(np.zeros(0, dtype=np.int64), 0)
    core = _kernels.core_numbers(g.n, g.indptr, g.indices)
    core.setflags(write=False)
    return CoreDecomposition(core, int(core.max()))


def extract_kcore(g: Graph, k: int) -> CoreSubgraph:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    in_core = g.core.core_number >= k
    nodes = np.flatnonzero(in_core)
    both = in_core[g.edges[:, 0]] & in_core[g.edges[:, 1]]
    edge_ids = np.flatnonzero(both)
    e = g.edges[edge_ids]
    deg = np.bincount(e.ravel(), minlength=g.n)[nodes]
    return CoreSubgraph(k, nodes, edge_ids, deg)


def decomposition_csv(g: Graph, dec: CoreDecomposition | None = None) -> str:
    """``node,core_number`` rows keyed by original labels, in label order."""
    dec = dec or g.core
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", "core_number"])
    for u in range(g.n):
        w.writerow([g.labels[u], int(dec.core_number[u])])
    return buf.getvalue()


def decomposition_summary(g: Graph, dec: CoreDecomposition | None = None) -> dict:
    dec = dec or g.core
    return {
        "n": g.n,
        "m": g.m,
        "k_max": dec.k_max,
        "N_k": {str(k): v for k, v in dec.core_sizes().items()},
        "dropped_duplicates": g.parse_stats.duplicates,
        "dropped_self_loops": g.parse_stats.self_loops,
    }


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=False) + "\n"
