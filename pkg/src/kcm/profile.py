"""DN(%) and k-versus-budget resilience profiles."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph
from .solution import CandidateSet, SamplingPlan, Solution, kcm_objective
from .solvers import baseline_jd, baseline_ld, baseline_rd, greedy_cut, shapley_cut

__all__ = ["ProfileGrid", "dn_percent", "resilience_profile", "solve"]

ALGORITHMS = ("SV", "GC", "LD", "JD", "RD")


def dn_percent(g: Graph, B, k: int) -> float:
    """Percentage of the k-core of ``g`` demoted by deleting ``B``.

    ``B`` holds edge ids or ``(u, v)`` node pairs. Returns 0.0 when the
    k-core is empty.
    """
    ids = [e if isinstance(e, (int, np.integer)) else g.edge_id(int(e[0]), int(e[1])) for e in B]
    n_k = int(np.count_nonzero(g.core.core_number >= k))
    if n_k == 0:
        return 0.0
    return 100.0 * kcm_objective(g, k, ids) / n_k


def solve(g: Graph, k: int, b: int, algorithm: str, candidates: CandidateSet | None = None,
          plan: SamplingPlan | None = None, prune: bool = True, threads: int | None = None) -> Solution:
    """Dispatch to a solver by tag (``SV``, ``GC``, ``LD``, ``JD``, ``RD``)."""
    algo = algorithm.upper()
    plan = plan or SamplingPlan()
    if algo == "SV":
        return shapley_cut(g, k, b, candidates, plan, prune=prune, threads=threads)
    if algo == "GC":
        return greedy_cut(g, k, b, candidates, prune=prune)
    if algo == "LD":
        return baseline_ld(g, k, b, candidates)
    if algo == "JD":
        return baseline_jd(g, k, b, candidates)
    if algo == "RD":
        return baseline_rd(g, k, b, candidates, seed=plan.seed)
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")


@dataclass
class ProfileGrid:
    """DN(%) per (k, budget) cell and its increase over the previous budget."""

    k_values: list[int]
    b_values: list[int]
    cells: np.ndarray
    deltas: np.ndarray
    algorithm: str
    seed: int
    empty_rows: list[int] = field(default_factory=list)

    def rows(self):
        for i, k in enumerate(self.k_values):
            for j, b in enumerate(self.b_values):
                yield k, b, float(self.cells[i, j]), float(self.deltas[i, j])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "b", "dn_percent", "delta_dn"])
        for k, b, dn, d in self.rows():
            w.writerow([k, b, repr(dn), repr(d)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "k_values": self.k_values,
            "b_values": self.b_values,
            "empty_rows": self.empty_rows,
            "cells": [
                {"k": k, "b": b, "dn_percent": dn, "delta_dn": d} for k, b, dn, d in self.rows()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def resilience_profile(
    g: Graph,
    k_values: Sequence[int],
    b_values: Sequence[int],
    algorithm: str = "SV",
    plan: SamplingPlan | None = None,
    prune: bool = True,
    threads: int | None = None,
) -> ProfileGrid:
    """Solve once per ``k`` at the largest budget and score budget prefixes.

    The cell for budget ``b`` deletes the first ``b`` edges of the solver's
    ranking, so DN(%) never decreases along a row.
    """
    ks = [int(k) for k in k_values]
    bs = [int(b) for b in b_values]
    if not ks or not bs:
        raise ValueError("need at least one k and one budget")
    if any(b < 0 for b in bs) or any(x >= y for x, y in zip(bs, bs[1:])):
        raise ValueError("budgets must be non-negative and strictly ascending")
    if any(k < 1 for k in ks) or any(x >= y for x, y in zip(ks, ks[1:])):
        raise ValueError("k values must be positive and strictly ascending")
    if algorithm.upper() not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    plan = plan or SamplingPlan()
    cells = np.zeros((len(ks), len(bs)))
    empty: list[int] = []
    b_max = bs[-1]
    for i, k in enumerate(ks):
        n_k = int(np.count_nonzero(g.core.core_number >= k))
        if n_k == 0:
            empty.append(k)
            continue
        if b_max == 0:
            continue
        ranked = solve(g, k, b_max, algorithm, plan=plan, prune=prune, threads=threads).edge_ids
        for j, b in enumerate(bs):
            cells[i, j] = 100.0 * kcm_objective(g, k, ranked[:b]) / n_k
    deltas = np.diff(cells, axis=1, prepend=0.0)
    return ProfileGrid(ks, bs, cells, deltas, algorithm.upper(), plan.seed, empty)
