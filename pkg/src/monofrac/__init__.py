"""Numerical certification of the fraction rules for monotonicity with
high-order antiderivatives, means, and Taylor remainders."""

__version__ = "0.1.0"

from .calculus import (
    DEFAULT_QUAD,
    AntiderivSpec,
    QuadConfig,
    antideriv_cauchy,
    antideriv_repeated,
    antideriv_semigroup_check,
    integrate,
    mean,
    remainder_integral_check,
    taylor_poly,
    taylor_remainder,
)
from .funcs import Grid, Interval, RealFn, finite_diff, make_grid, spot_check_derivatives
from .monotone import (
    MonotonicityReport,
    Sign,
    TheoremCase,
    Verdict,
    monotonicity_of,
    sign_check,
    verify_gromov,
    verify_lhopital,
    verify_mean_convex,
    verify_mean_monotone,
    zero_set_check_A,
    zero_set_check_R,
)
from .radial import RadialCase, ball_constant, monte_carlo_ball, radial_integral, verify_radial_monotone
from .sir import (
    SirParams,
    SirState,
    lambert_w0,
    sir_apriori_check,
    sir_final_size,
    sir_integrate,
    sir_mean_apriori_check,
)

__all__ = [
    "__version__",
    "AntiderivSpec",
    "DEFAULT_QUAD",
    "Grid",
    "Interval",
    "MonotonicityReport",
    "QuadConfig",
    "RadialCase",
    "RealFn",
    "Sign",
    "SirParams",
    "SirState",
    "TheoremCase",
    "Verdict",
    "antideriv_cauchy",
    "antideriv_repeated",
    "antideriv_semigroup_check",
    "ball_constant",
    "finite_diff",
    "integrate",
    "lambert_w0",
    "make_grid",
    "mean",
    "monotonicity_of",
    "monte_carlo_ball",
    "radial_integral",
    "remainder_integral_check",
    "sign_check",
    "sir_apriori_check",
    "sir_final_size",
    "sir_integrate",
    "sir_mean_apriori_check",
    "spot_check_derivatives",
    "taylor_poly",
    "taylor_remainder",
    "verify_gromov",
    "verify_lhopital",
    "verify_mean_convex",
    "verify_mean_monotone",
    "verify_radial_monotone",
    "zero_set_check_A",
    "zero_set_check_R",
]
