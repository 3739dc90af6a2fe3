"""Pulse-level DPS QKD simulator with a key-rate lower-bound engine.

The package covers the noiseless lossy-channel model end to end: coherent
pulse optics and threshold detection, the classical sifting pipeline with
Monte Carlo channel estimation, the Holevo-constrained key-rate bound with
its binomial/Gaussian asymptotics, and a numerical verifier for the
super-subadditivity inequality of conditional von Neumann entropy.
"""

from .config import SimulationConfig
from .entropy import (
    DensityMatrix,
    ProbDist,
    binary_entropy,
    conditional_entropy,
    partial_trace,
    shannon_entropy,
    source_entropy,
    tensor_product,
    von_neumann_entropy,
)
from .errors import (
    ConfigError,
    DimensionBudgetError,
    DpsQkdError,
    EigensolverError,
    InconsistentStatisticsError,
    InvalidDistributionError,
    InvalidStateError,
)
from .keyrate import (
    GaussianLimit,
    KeyRateBound,
    KeyRateReport,
    asymptotic_rate,
    count_threshold,
    evaluate,
    gaussian_limit,
    holevo_constraint,
    information_shortfall,
    key_rate_bound,
    optimize_amplitude,
)
from .optics import (
    CoherentBlock,
    DetectorAmplitudes,
    click_probability,
    coefficient_matrix,
    honest_click_rate,
    mz_transform,
    wrong_detector_amplitude,
)
from .protocol import (
    BlockRecord,
    CountDistribution,
    RunStatistics,
    difference_bits,
    estimate_statistics,
    exact_count_distribution,
    sift,
    simulate_block,
    simulate_run,
    weight_invariance_check,
)
from .subadditivity import (
    SubaddTrial,
    coefficient_identity,
    full_report,
    random_joint_state,
    subset_entropy_sum,
    verify_super_subadditivity,
)

__version__ = "0.1.0"

__all__ = [
    "BlockRecord",
    "CoherentBlock",
    "ConfigError",
    "CountDistribution",
    "DensityMatrix",
    "DetectorAmplitudes",
    "DimensionBudgetError",
    "DpsQkdError",
    "EigensolverError",
    "GaussianLimit",
    "InconsistentStatisticsError",
    "InvalidDistributionError",
    "InvalidStateError",
    "KeyRateBound",
    "KeyRateReport",
    "ProbDist",
    "RunStatistics",
    "SimulationConfig",
    "SubaddTrial",
    "asymptotic_rate",
    "binary_entropy",
    "click_probability",
    "coefficient_identity",
    "coefficient_matrix",
    "conditional_entropy",
    "count_threshold",
    "difference_bits",
    "estimate_statistics",
    "evaluate",
    "exact_count_distribution",
    "full_report",
    "gaussian_limit",
    "holevo_constraint",
    "honest_click_rate",
    "information_shortfall",
    "key_rate_bound",
    "mz_transform",
    "optimize_amplitude",
    "partial_trace",
    "random_joint_state",
    "shannon_entropy",
    "sift",
    "simulate_block",
    "simulate_run",
    "source_entropy",
    "subset_entropy_sum",
    "tensor_product",
    "verify_super_subadditivity",
    "von_neumann_entropy",
    "weight_invariance_check",
]
