"""Closed-form exponential map sp(4, R) -> Sp(4, R) and the classical squeeze matrix."""

from .expmap import (
    AsymmetricBlockError,
    Generator,
    SeriesCoeffs,
    SpectralData,
    blocks_ABCD,
    coeffs_closed,
    coeffs_recursive,
    compute_S,
    entire_c,
    entire_s,
    exp_sp4,
    exp_sp4_ac_zero,
    exp_sp4_b_zero,
    lie_matrix,
    series_coeffs,
)
from .oracle import ExpOracleConfig, FuzzReport, exp_series, fuzz_expmap, symplectic_residual
from .squeeze import (
    SqueezeParams,
    Trajectory,
    circular_trajectory,
    correlation_matrix,
    factor_two_check,
    squeeze_b,
    squeeze_matrix,
    transform_trajectory,
)

__version__ = "0.1.0"
