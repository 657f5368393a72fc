"""Fat-point interpolation degrees and Seshadri-constant bounds in exact arithmetic."""

from ._core import (
    BudgetExceeded,
    DegenerateScheme,
    Error,
    InvalidArgument,
    __version__,
    alpha,
    alpha_generic,
    bounds,
    default_primes,
    double_point_status,
    expected_alpha,
    generic_rank,
    radical,
    radical_cmp,
    radical_float,
    radical_json,
    run_cli,
    sweep,
    symmetrization_chain,
)

__all__ = [
    "BudgetExceeded",
    "DegenerateScheme",
    "Error",
    "InvalidArgument",
    "__version__",
    "alpha",
    "alpha_generic",
    "bounds",
    "default_primes",
    "double_point_status",
    "expected_alpha",
    "generic_rank",
    "radical",
    "radical_cmp",
    "radical_float",
    "radical_json",
    "run_cli",
    "sweep",
    "symmetrization_chain",
]
