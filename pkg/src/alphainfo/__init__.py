"""Main package for alphainfo."""

from __future__ import annotations

from alphainfo.bounds import (
    dependence_bound,
    exact_map_error,
    fano_like_bound,
    gen_error_bound,
    generalized_fano,
    hypothesis_testing_bound,
    tpc_check,
)
from alphainfo.capacity import (
    alpha_nml,
    error_exponents,
    shannon_capacity,
    sibson_capacity,
    zero_error_feedback_capacity,
)
from alphainfo.errors import AlphaInfoError, NoConvergence, NotADistribution
from alphainfo.prob_core import (
    AlphaOrder,
    Channel,
    JointPMF,
    ProbVector,
    as_joint,
    load_joint,
    validate_and_normalize,
)
from alphainfo.renyi import cond_renyi_entropy, renyi_divergence, renyi_entropy
from alphainfo.sibson import (
    arimoto_mi,
    conditional_sibson_mi,
    csiszar_mi,
    lapidoth_pfister_mi,
    maximal_leakage,
    sibson_mi,
)
from alphainfo.units import activate, deactivate
from alphainfo.variational import f_star, g_star, var_rep_one, var_rep_ratio

from importlib.metadata import version

__version__ = version("alphainfo")

__all__ = [
    "AlphaInfoError",
    "AlphaOrder",
    "Channel",
    "JointPMF",
    "NoConvergence",
    "NotADistribution",
    "ProbVector",
    "__version__",
    "activate",
    "alpha_nml",
    "arimoto_mi",
    "as_joint",
    "cond_renyi_entropy",
    "conditional_sibson_mi",
    "csiszar_mi",
    "deactivate",
    "dependence_bound",
    "error_exponents",
    "exact_map_error",
    "f_star",
    "fano_like_bound",
    "g_star",
    "gen_error_bound",
    "generalized_fano",
    "hypothesis_testing_bound",
    "lapidoth_pfister_mi",
    "load_joint",
    "maximal_leakage",
    "renyi_divergence",
    "renyi_entropy",
    "shannon_capacity",
    "sibson_capacity",
    "sibson_mi",
    "tpc_check",
    "validate_and_normalize",
    "var_rep_one",
    "var_rep_ratio",
    "zero_error_feedback_capacity",
]
