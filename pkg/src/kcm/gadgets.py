"""Reduction gadgets: Set Union Knapsack and Set Cover instances as graphs.

Both constructions give a graph whose 3-core is the whole node set and a
designated candidate set whose deletions collapse known node groups, so the
objective of any deletion set can be predicted from the source instance.

Node labels are role strings such as ``"Y[2,1]"`` (item 2, position 1) or
``"Z[0,1]"``; indices in labels are 1-based to mirror the usual
``S_1..S_m`` / ``u_1..u_n`` naming.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

__all__ = [
    "GadgetError",
    "GadgetGraph",
    "ScInstance",
    "SkInstance",
    "build_setcover_gadget",
    "build_sk_gadget",
    "has_cover",
    "load_instance",
]

DEFAULT_X_BLOCK = 4


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class SkInstance:
    """Set Union Knapsack with unit profits and weights: items and subsets."""

    n_items: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "subsets", tuple(frozenset(s) for s in self.subsets))
        for i, s in enumerate(self.subsets):
            if not s:
                raise GadgetError(f"subset S_{i + 1} is empty")
            if min(s) < 0 or max(s) >= self.n_items:
                raise GadgetError(f"subset S_{i + 1} references an item outside 0..{self.n_items - 1}")


@dataclass(frozen=True)
class ScInstance:
    """Set Cover: every item must appear in at least one subset."""

    n_items: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "subsets", tuple(frozenset(s) for s in self.subsets))
        for i, s in enumerate(self.subsets):
            if s and (min(s) < 0 or max(s) >= self.n_items):
                raise GadgetError(f"subset S_{i + 1} references an item outside 0..{self.n_items - 1}")
        covered = frozenset().union(*self.subsets) if self.subsets else frozenset()
        missing = sorted(set(range(self.n_items)) - covered)
        if missing:
            raise GadgetError(f"item u_{missing[0] + 1} is in no subset")


@dataclass
class GadgetGraph:
    graph: Graph
    candidates: list[int]  # edge ids
    roles: dict[str, str]  # label -> role tag
    instance: dict = field(default_factory=dict)

    def candidate_pairs(self) -> list[tuple[str, str]]:
        return [self.graph.edge_labels(e) for e in self.candidates]

    def sidecar(self) -> dict:
        return {
            "instance": self.instance,
            "gamma": [list(p) for p in self.candidate_pairs()],
            "roles": self.roles,
        }


class _Builder:
    def __init__(self):
        self.labels: list[str] = []
        self.roles: dict[str, str] = {}
        self.index: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []

    def node(self, label: str, role: str) -> int:
        if label not in self.index:
            self.index[label] = len(self.labels)
            self.labels.append(label)
            self.roles[label] = role
        return self.index[label]

    def edge(self, a: str, b: str) -> None:
        self.edges.append((self.index[a], self.index[b]))

    def cycle(self, labels: list[str]) -> None:
        for a, b in zip(labels, labels[1:] + labels[:1]):
            self.edge(a, b)

    def z_widget(self, j: int) -> None:
        for t in range(1, 6):
            self.node(f"Z[{j},{t}]", "Z-clique")
        for a, b in itertools.combinations(range(2, 6), 2):
            self.edge(f"Z[{j},{a}]", f"Z[{j},{b}]")
        self.edge(f"Z[{j},1]", f"Z[{j},2]")
        self.edge(f"Z[{j},1]", f"Z[{j},5]")

    def finish(self, gamma: list[tuple[str, str]], instance: dict) -> GadgetGraph:
        # Graph numbers nodes in label order
        order = sorted(range(len(self.labels)), key=lambda i: self.labels[i])
        new_of = np.empty(len(order), dtype=np.int64)
        new_of[order] = np.arange(len(order))
        edges = new_of[np.array(self.edges, dtype=np.int64)]
        labels = [self.labels[i] for i in order]
        g = Graph(len(labels), edges, labels=labels)
        if g.m != len(self.edges):
            raise GadgetError("construction produced a repeated edge")
        low = np.flatnonzero(g.degrees < 3)
        if low.size:
            lab = labels[low[0]]
            raise GadgetError(
                f"node {lab} has degree {g.degree(int(low[0]))} < 3; "
                "the construction needs every item to be missing from at least one subset"
            )
        cand = sorted(g.edge_id_by_label(a, b) for a, b in gamma)
        return GadgetGraph(g, cand, dict(sorted(self.roles.items())), instance)


def _x_block(bld: _Builder, i: int, size: int) -> tuple[str, str]:
    """Cycle plus a chord matching: degree 3 except two degree-2 stubs."""
    if size < 4 or size % 2:
        raise GadgetError(f"x_block_size must be an even number >= 4, got {size}")
    lab = [f"X[{i},b{t}]" for t in range(size)]
    for s in lab:
        bld.node(s, "X-block")
    bld.cycle(lab)
    if size == 4:
        bld.edge(lab[1], lab[3])
        return lab[0], lab[2]
    rest = list(range(2, size))
    half = len(rest) // 2
    for a, b in zip(rest[:half], rest[half:]):
        bld.edge(lab[a], lab[b])
    return lab[0], lab[1]


def build_sk_gadget(inst: SkInstance, x_block_size: int = DEFAULT_X_BLOCK) -> GadgetGraph:
    """Graph for a unit-profit Set Union Knapsack instance.

    Per item ``u_j``: a cycle ``Y[j,1..m']`` and a Z widget (a 4-clique
    ``Z[j,2..5]`` plus ``Z[j,1]`` joined to ``Z[j,2]`` and ``Z[j,5]``). Per
    subset ``S_i``: an apex ``X[i,1]`` attached to the two stubs of an
    ``x_block_size``-node block. ``Y[j,i]`` joins ``X[i,1]`` when
    ``u_j in S_i`` and ``Z[j,1]`` otherwise. Candidates: ``(Y[j,1], Y[j,2])``.

    Deleting the candidates of an item set ``J`` removes ``|J| (m'+1)``
    nodes plus ``x_block_size + 1`` for every subset contained in ``J``.
    """
    m = len(inst.subsets)
    if m < 3:
        raise GadgetError(f"need at least 3 subsets for the Y cycles, got {m}")
    bld = _Builder()
    for j in range(1, inst.n_items + 1):
        for i in range(1, m + 1):
            bld.node(f"Y[{j},{i}]", "Y-cycle")
        bld.cycle([f"Y[{j},{i}]" for i in range(1, m + 1)])
        bld.z_widget(j)
    for i in range(1, m + 1):
        apex = f"X[{i},1]"
        bld.node(apex, "X-apex")
        s1, s2 = _x_block(bld, i, x_block_size)
        bld.edge(apex, s1)
        bld.edge(apex, s2)
    for i, s in enumerate(inst.subsets, start=1):
        for j in range(1, inst.n_items + 1):
            if j - 1 in s:
                bld.edge(f"X[{i},1]", f"Y[{j},{i}]")
            else:
                bld.edge(f"Y[{j},{i}]", f"Z[{j},1]")
    gamma = [(f"Y[{j},1]", f"Y[{j},2]") for j in range(1, inst.n_items + 1)]
    return bld.finish(gamma, {
        "type": "sk",
        "n_items": inst.n_items,
        "subsets": [sorted(s) for s in inst.subsets],
        "x_block_size": x_block_size,
    })


def build_setcover_gadget(inst: ScInstance) -> GadgetGraph:
    """Graph for a Set Cover instance with ``n`` items and ``m`` subsets.

    Per subset ``S_i``: cycles ``X[i,1..n]`` and ``W[i,1..n]`` joined by
    rungs ``(W[i,j], X[i,j])``. Per item ``u_j``: a cycle ``Y[j,1..m]`` and
    a Z widget. ``X[i,j]`` joins ``Y[j,i]`` when ``u_j in S_i``, otherwise
    ``Y[j,i]`` joins ``Z[j,1]``. Candidates: ``(W[i,1], W[i,2])``.

    Deleting the candidates of ``b`` subsets removes ``2bn`` nodes plus
    ``m + 1`` for each covered item, so the objective reaches
    ``2bn + n(m+1)`` exactly when the subsets form a cover.
    """
    n, m = inst.n_items, len(inst.subsets)
    if n < 3 or m < 3:
        raise GadgetError(f"need n >= 3 items and m >= 3 subsets, got n={n}, m={m}")
    for i, s in enumerate(inst.subsets, start=1):
        if len(s) == n:
            raise GadgetError(f"subset S_{i} contains every item; drop the trivial case")
    bld = _Builder()
    for i in range(1, m + 1):
        xs = [f"X[{i},{j}]" for j in range(1, n + 1)]
        ws = [f"W[{i},{j}]" for j in range(1, n + 1)]
        for x in xs:
            bld.node(x, "X-cycle")
        for w in ws:
            bld.node(w, "W-cycle")
        bld.cycle(xs)
        bld.cycle(ws)
        for x, w in zip(xs, ws):
            bld.edge(w, x)
    for j in range(1, n + 1):
        for i in range(1, m + 1):
            bld.node(f"Y[{j},{i}]", "Y-cycle")
        bld.cycle([f"Y[{j},{i}]" for i in range(1, m + 1)])
        bld.z_widget(j)
    for i, s in enumerate(inst.subsets, start=1):
        for j in range(1, n + 1):
            if j - 1 in s:
                bld.edge(f"X[{i},{j}]", f"Y[{j},{i}]")
            else:
                bld.edge(f"Y[{j},{i}]", f"Z[{j},1]")
    gamma = [(f"W[{i},1]", f"W[{i},2]") for i in range(1, m + 1)]
    return bld.finish(gamma, {
        "type": "setcover",
        "n_items": n,
        "subsets": [sorted(s) for s in inst.subsets],
    })


def has_cover(inst: ScInstance, b: int) -> bool:
    """Whether some ``b`` subsets cover every item (brute force)."""
    universe = frozenset(range(inst.n_items))
    return any(
        frozenset().union(*combo) == universe
        for combo in itertools.combinations(inst.subsets, min(b, len(inst.subsets)))
    )


def load_instance(data: dict | str) -> tuple[SkInstance | ScInstance, dict]:
    """Parse an instance document ``{"type", "n_items", "subsets", ...}``.

    Items are 0-based in the document. Returns the instance and the
    remaining build options.
    """
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("type")
    try:
        n_items = int(data["n_items"])
        subsets = [frozenset(int(x) for x in s) for s in data["subsets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GadgetError(f"malformed instance: {exc}") from None
    if kind == "setcover":
        return ScInstance(n_items, tuple(subsets)), {}
    if kind == "sk":
        return SkInstance(n_items, tuple(subsets)), {"x_block_size": int(data.get("x_block_size", DEFAULT_X_BLOCK))}
    raise GadgetError(f"unknown instance type {kind!r}; expected 'sk' or 'setcover'")


def build(data: dict | str) -> GadgetGraph:
    inst, opts = load_instance(data)
    if isinstance(inst, ScInstance):
        return build_setcover_gadget(inst)
    return build_sk_gadget(inst, **opts)
