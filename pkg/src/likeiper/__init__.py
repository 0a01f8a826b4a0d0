"""Li-Keiper coefficients, cluster-expansion bounds, and the related
xi-function constants at arbitrary precision.

The pipeline: build the Taylor series of 2 xi(s) at s = 1 from
Stieltjes constants and zeta values (``xifactory``), turn it into the
phi/lambda coefficient ladder with cluster-truncation bounds
(``cluster``), evaluate the log-derivative constant c by several
independent routes (``constants``), and check every identity with
measured margins (``verify``).  The ``likeiper`` command line exposes
all of it; see the README for examples.
"""
from .cluster import (
    EquilibriumSides,
    LiRecord,
    Partition,
    bell_phi,
    bounds,
    build_li_records,
    cluster_blocks,
    cluster_weight,
    delta_epsilon,
    equilibrium_residual,
    equilibrium_sides,
    hr_estimate,
    lambda_from_phi,
    lambda_partition_sum,
    lambdas_from_phis,
    partition_count,
    partitions,
    phi_from_lambda,
    phi_from_xi,
    phi_ladder,
    phi_series,
    rwb_lower,
    weight_sum_check,
)
from .constants import (
    ConstantReport,
    Route,
    binary_zero_series_limit,
    binary_zero_series_partial,
    c_exact,
    c_from_binary,
    c_from_lambda,
    c_series_oracle,
    c_trend_tiny,
    n_one_count,
    n_zero_count,
    trend_tiny_split,
)
from .errors import (
    CacheError,
    DomainError,
    LikeiperError,
    PrecisionError,
    UsageError,
)
from .mpseries import (
    BigReal,
    PowerSeries,
    binomial,
    prefix_delta,
    series,
    series_eval,
    series_exp,
    series_log,
    series_mul,
)
from .verify import CheckResult, all_passed, run_verification
from .xifactory import (
    ConstantCache,
    XiTaylor,
    euler_gamma,
    stieltjes_constants,
    symmetry_residual,
    trend_tiny_factors,
    xi_taylor,
    zeta_prime_values,
    zeta_values,
)

__version__ = "0.1.0"

__all__ = [
    "BigReal",
    "CacheError",
    "CheckResult",
    "ConstantCache",
    "ConstantReport",
    "DomainError",
    "EquilibriumSides",
    "LiRecord",
    "LikeiperError",
    "Partition",
    "PowerSeries",
    "PrecisionError",
    "Route",
    "UsageError",
    "XiTaylor",
    "all_passed",
    "bell_phi",
    "binary_zero_series_limit",
    "binary_zero_series_partial",
    "binomial",
    "bounds",
    "build_li_records",
    "c_exact",
    "c_from_binary",
    "c_from_lambda",
    "c_series_oracle",
    "c_trend_tiny",
    "cluster_blocks",
    "cluster_weight",
    "delta_epsilon",
    "equilibrium_residual",
    "equilibrium_sides",
    "euler_gamma",
    "hr_estimate",
    "lambda_from_phi",
    "lambda_partition_sum",
    "lambdas_from_phis",
    "n_one_count",
    "n_zero_count",
    "partition_count",
    "partitions",
    "phi_from_lambda",
    "phi_from_xi",
    "phi_ladder",
    "phi_series",
    "prefix_delta",
    "run_verification",
    "rwb_lower",
    "series",
    "series_eval",
    "series_exp",
    "series_log",
    "series_mul",
    "stieltjes_constants",
    "symmetry_residual",
    "trend_tiny_factors",
    "trend_tiny_split",
    "weight_sum_check",
    "xi_taylor",
    "zeta_prime_values",
    "zeta_values",
]
