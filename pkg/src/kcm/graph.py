"""Undirected simple graphs stored in CSR form, plus edge-list I/O."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, TextIO

import numpy as np

__all__ = [
    "EdgeListParseError",
    "Graph",
    "MissingEdgeError",
    "ParseStats",
    "delete_edges",
    "parse_edge_list",
    "read_edge_list",
    "write_edge_list",
]


class EdgeListParseError(ValueError):
    """Raised for a malformed edge-list line."""

    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class MissingEdgeError(KeyError):
    """Raised when an edge is requested that the graph does not contain."""

    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge} is not in the graph")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class ParseStats:
    lines: int = 0
    comments: int = 0
    duplicates: int = 0
    self_loops: int = 0


class Graph:
    """Immutable undirected simple graph on nodes ``0..n-1``.

    Edges are stored once as ``(u, v)`` with ``u < v`` and sorted
    lexicographically, so an edge id is its rank in that order. Node
    labels (the identifiers found in the input) are kept alongside; they
    are assigned in ascending label order, which makes edge-id order agree
    with lexicographic order on the original labels.

    Adjacency is CSR: the neighbours of ``u`` are
    ``indices[indptr[u]:indptr[u+1]]`` (ascending) and ``slot_edge`` gives
    the edge id of each adjacency slot.
    """

    def __init__(
        self,
        n: int,
        edges: np.ndarray,
        labels: list[Hashable] | None = None,
        parse_stats: ParseStats | None = None,
        _trusted: bool = False,
    ):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if not _trusted:
            edges = _canonical_edges(n, edges)
        self.n = int(n)
        self.edges = edges
        self.edges.setflags(write=False)
        self.labels = list(range(self.n)) if labels is None else list(labels)
        if len(self.labels) != self.n:
            raise ValueError("labels must have one entry per node")
        self.parse_stats = parse_stats or ParseStats()
        self.indptr, self.indices, self.slot_edge = _build_csr(self.n, edges)
        for arr in (self.indptr, self.indices, self.slot_edge):
            arr.setflags(write=False)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> Graph:
        """Build from integer pairs on nodes ``0..n-1``.

        Self-loops and duplicates are dropped silently; use
        :func:`parse_edge_list` when the counts matter.
        """
        arr = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        return cls(n, arr)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.diff(self.indptr)
        deg.setflags(write=False)
        return deg

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u] : self.indptr[u + 1]]

    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(u).tolist() for u in range(self.n)]

    def edge_id(self, u: int, v: int) -> int:
        """Edge id of ``{u, v}``; raises :class:`MissingEdgeError` if absent."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise MissingEdgeError((u, v))
        lo, hi = self.indptr[u], self.indptr[u + 1]
        pos = lo + int(np.searchsorted(self.indices[lo:hi], v))
        if pos >= hi or self.indices[pos] != v:
            raise MissingEdgeError((u, v))
        return int(self.slot_edge[pos])

    def has_edge(self, u: int, v: int) -> bool:
        try:
            self.edge_id(u, v)
        except MissingEdgeError:
            return False
        return True

    def edge_ids(self, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
        return np.array([self.edge_id(int(u), int(v)) for u, v in pairs], dtype=np.int64)

    @cached_property
    def label_index(self) -> dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def edge_labels(self, eid: int) -> tuple[Hashable, Hashable]:
        u, v = self.edges[eid]
        return self.labels[u], self.labels[v]

    def edge_id_by_label(self, a: Hashable, b: Hashable) -> int:
        try:
            u, v = self.label_index[a], self.label_index[b]
        except KeyError:
            raise MissingEdgeError((a, b)) from None
        try:
            return self.edge_id(u, v)
        except MissingEdgeError:
            raise MissingEdgeError((a, b)) from None

    @cached_property
    def core(self):
        # local import: core.py depends on this module
        from .core import kcore_decompose

        return kcore_decompose(self)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _canonical_edges(n: int, edges: np.ndarray) -> np.ndarray:
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise ValueError(f"edge endpoint outside 0..{n - 1}")
    edges = np.sort(edges, axis=1)
    edges = edges[edges[:, 0] != edges[:, 1]]
    if len(edges) == 0:
        return np.empty((0, 2), dtype=np.int64)
    return np.unique(edges, axis=0)


def _build_csr(n: int, edges: np.ndarray):
    m = len(edges)
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    eid = np.concatenate([np.arange(m), np.arange(m)])
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst[order].astype(np.int64), eid[order].astype(np.int64)


def delete_edges(g: Graph, B: Iterable[tuple[int, int]]) -> Graph:
    """Return ``G^B``: the same node set with the edges in ``B`` removed."""
    ids = g.edge_ids(B)
    keep = np.ones(g.m, dtype=bool)
    keep[ids] = False
    return Graph(g.n, g.edges[keep], labels=g.labels, _trusted=True)


def parse_edge_list(text: str | TextIO, integer_ids: bool = True) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` are comments; tokens after the
    second on a line are ignored (SNAP files sometimes carry weights).
    Self-loops and repeated edges are dropped and counted in
    ``graph.parse_stats``. With ``integer_ids`` every identifier must be a
    non-negative integer; otherwise identifiers are opaque strings.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    raw: list[tuple[Hashable, Hashable]] = []
    lines = comments = 0
    for lineno, line in enumerate(stream, start=1):
        lines += 1
        s = line.strip()
        if not s:
            continue
        if s[0] in "#%":
            comments += 1
            continue
        tok = s.split()
        if len(tok) < 2:
            raise EdgeListParseError(lineno, line.rstrip("\r\n"), "expected two node identifiers")
        a, b = tok[0], tok[1]
        if integer_ids:
            try:
                a, b = int(a), int(b)
            except ValueError:
                raise EdgeListParseError(lineno, line.rstrip("\r\n"), "non-integer node identifier") from None
            if a < 0 or b < 0:
                raise EdgeListParseError(lineno, line.rstrip("\r\n"), "negative node identifier")
        raw.append((a, b))

    labels = sorted({x for pair in raw for x in pair})
    index = {lab: i for i, lab in enumerate(labels)}
    arr = np.array([(index[a], index[b]) for a, b in raw], dtype=np.int64).reshape(-1, 2)
    loops = int(np.count_nonzero(arr[:, 0] == arr[:, 1])) if len(arr) else 0
    canon = _canonical_edges(len(labels), arr)
    stats = ParseStats(
        lines=lines,
        comments=comments,
        duplicates=len(arr) - loops - len(canon),
        self_loops=loops,
    )
    return Graph(len(labels), canon, labels=labels, parse_stats=stats, _trusted=True)


def read_edge_list(path: str | os.PathLike, integer_ids: bool = True) -> Graph:
    with open(path, encoding="utf-8", newline=None) as fh:
        return parse_edge_list(fh, integer_ids=integer_ids)


def write_edge_list(g: Graph, fh: TextIO | None = None) -> str | None:
    """Serialize ``g`` as ``u v`` lines using the original labels."""
    out = "".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in g.edges.tolist())
    if fh is None:
        return out
    fh.write(out)
    return None
