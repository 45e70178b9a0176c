"""Mutable working copy of a k-core supporting cascading edge deletion."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .graph import Graph, MissingEdgeError

__all__ = ["CoreState", "compute_vs", "local_update"]


class CoreState:
    """The current k-core of ``G`` minus the edges deleted so far.

    Every deletion is journalled; :meth:`checkpoint` returns a marker and
    :meth:`rollback` undoes everything after it.
    """

    def __init__(self, g: Graph, k: int):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        self.graph = g
        self.k = int(k)
        self.node_alive = g.core.core_number >= k
        self.edge_alive = self.node_alive[g.edges[:, 0]] & self.node_alive[g.edges[:, 1]]
        self.deg = np.bincount(g.edges[self.edge_alive].ravel(), minlength=g.n).astype(np.int64)
        self._edge_log = np.empty(max(g.m, 1), dtype=np.int64)
        self._edge_log_len = 0
        self._node_log = np.empty(max(g.n, 1), dtype=np.int64)
        self._node_log_len = 0
        self._deleted: list[int] = []
        # scratch for the kernels
        self._lost = np.zeros(g.n, dtype=np.int64)
        self._mark = np.zeros(g.n, dtype=np.uint8)
        self._queue = np.empty(g.n, dtype=np.int64)

    @property
    def n_alive(self) -> int:
        return int(np.count_nonzero(self.node_alive))

    def nodes(self) -> np.ndarray:
        return np.flatnonzero(self.node_alive)

    def edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self.edge_alive)

    @property
    def deleted(self) -> list[int]:
        """Edge ids passed to :meth:`delete`, in order."""
        return list(self._deleted)

    def _resolve(self, e) -> tuple[int, int, int]:
        g = self.graph
        if isinstance(e, (int, np.integer)):
            eid = int(e)
            if not 0 <= eid < g.m:
                raise MissingEdgeError(eid)
        else:
            eid = g.edge_id(int(e[0]), int(e[1]))
        if not self.edge_alive[eid]:
            u, v = g.edges[eid]
            raise MissingEdgeError((int(u), int(v)))
        u, v = g.edges[eid]
        return eid, int(u), int(v)

    def _probe(self, eid: int, u: int, v: int) -> int:
        g = self.graph
        return _kernels.probe(eid, u, v, self.k, g.indptr, g.indices, g.slot_edge,
                              self.edge_alive, self.deg, self._lost, self._mark, self._queue)

    def vulnerable_set(self, e) -> np.ndarray:
        """Nodes that would leave the k-core if ``e`` were deleted (sorted)."""
        eid, u, v = self._resolve(e)
        cnt = self._probe(eid, u, v)
        return np.sort(self._queue[:cnt])

    def delete(self, e) -> np.ndarray:
        """Delete ``e`` and cascade; returns the removed nodes (sorted)."""
        g = self.graph
        eid, u, v = self._resolve(e)
        cnt = self._probe(eid, u, v)
        removed = self._queue[:cnt].copy()
        self._edge_log_len = _kernels.apply_removal(
            eid, u, v, cnt, removed, g.indptr, g.indices, g.slot_edge, g.edges,
            self.node_alive, self.edge_alive, self.deg, self._edge_log, self._edge_log_len,
        )
        self._node_log[self._node_log_len : self._node_log_len + cnt] = removed
        self._node_log_len += cnt
        self._deleted.append(eid)
        return np.sort(removed)

    def checkpoint(self) -> tuple[int, int, int]:
        return self._edge_log_len, self._node_log_len, len(self._deleted)

    def rollback(self, mark: tuple[int, int, int]) -> None:
        e_len, n_len, d_len = mark
        if e_len > self._edge_log_len or n_len > self._node_log_len:
            raise ValueError("checkpoint is newer than the current state")
        _kernels.restore(self._edge_log, e_len, self._edge_log_len, self._node_log, n_len,
                         self._node_log_len, self.graph.edges, self.node_alive, self.edge_alive, self.deg)
        self._edge_log_len, self._node_log_len = e_len, n_len
        del self._deleted[d_len:]

    def snapshot(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.node_alive.copy(), self.edge_alive.copy(), self.deg.copy()

    def __repr__(self) -> str:
        return f"CoreState(k={self.k}, nodes={self.n_alive}, edges={int(self.edge_alive.sum())})"


def compute_vs(e, state: CoreState) -> set[int]:
    """Vulnerable set of ``e`` in ``state``; the state is left untouched."""
    return set(state.vulnerable_set(e).tolist())


def local_update(e, state: CoreState) -> set[int]:
    """Delete ``e`` from ``state``, cascading; returns the removed nodes."""
    return set(state.delete(e).tolist())
