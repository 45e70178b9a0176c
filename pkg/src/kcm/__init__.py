"""k-core decomposition and budgeted k-core minimisation by edge deletion."""

from .core import CoreDecomposition, CoreSubgraph, extract_kcore, kcore_decompose
from .gadgets import (
    GadgetError,
    GadgetGraph,
    ScInstance,
    SkInstance,
    build_setcover_gadget,
    build_sk_gadget,
)
from .graph import (
    EdgeListParseError,
    Graph,
    MissingEdgeError,
    delete_edges,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from .oracles import OracleBudget, OracleRefused, exact_kcm, exact_shapley, naive_kcore
from .profile import ProfileGrid, dn_percent, resilience_profile
from .solution import CandidateSet, SamplingPlan, Solution, kcm_objective, sample_size
from .solvers import (
    baseline_jd,
    baseline_ld,
    baseline_rd,
    greedy_cut,
    shapley_cut,
    shapley_estimates,
)
from .state import CoreState, compute_vs, local_update

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "CoreDecomposition",
    "CoreState",
    "CoreSubgraph",
    "EdgeListParseError",
    "GadgetError",
    "GadgetGraph",
    "Graph",
    "MissingEdgeError",
    "OracleBudget",
    "OracleRefused",
    "ProfileGrid",
    "SamplingPlan",
    "ScInstance",
    "SkInstance",
    "Solution",
    "baseline_jd",
    "baseline_ld",
    "baseline_rd",
    "build_setcover_gadget",
    "build_sk_gadget",
    "compute_vs",
    "delete_edges",
    "dn_percent",
    "exact_kcm",
    "exact_shapley",
    "extract_kcore",
    "greedy_cut",
    "kcm_objective",
    "kcore_decompose",
    "local_update",
    "naive_kcore",
    "parse_edge_list",
    "read_edge_list",
    "resilience_profile",
    "sample_size",
    "shapley_cut",
    "shapley_estimates",
    "write_edge_list",
]
