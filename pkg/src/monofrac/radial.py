"""Radial reduction of ball integrals to one-dimensional antiderivatives,
with a seeded Monte Carlo cross-check.

The integral of f(r - |x|) over the dim-ball of radius r reduces by the
polar change of variables to a constant times the order-dim antiderivative
of f at 0, so ratio monotonicity in r is exactly the one-dimensional
fraction rule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .calculus import DEFAULT_QUAD, AntiderivSpec, QuadConfig, antideriv_cauchy
from .errors import HypothesisViolationError
from .funcs import Grid, Interval, RealFn, make_grid
from .monotone import (
    TAU_STRICT_SCALE,
    MonotonicityReport,
    Sign,
    monotonicity_of,
    sign_check,
)

_SQRT_PI = math.sqrt(math.pi)
_MAX_DIM = 6

# splitmix64 constants (Steele, Lea & Flood); used as a counter-based
# generator so that sample i depends only on (seed, i) and results are
# independent of batch size and thread count.
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def half_gamma(two_z: int) -> float:
    """Gamma at the half-integer two_z/2, from Gamma(1/2) = sqrt(pi) and
    Gamma(1) = 1 via the recurrence Gamma(z+1) = z * Gamma(z)."""
    if two_z < 1:
        raise ValueError("argument must be a positive half-integer (doubled)")
    if two_z == 1:
        return _SQRT_PI
    if two_z == 2:
        return 1.0
    return (two_z - 2) / 2.0 * half_gamma(two_z - 2)


def ball_constant(dim: int) -> float:
    """2 * pi^(dim/2) / Gamma(dim/2), the surface factor of the polar
    change of variables (2 for dim 1, 2*pi for dim 2, 4*pi for dim 3)."""
    if not 1 <= dim <= _MAX_DIM:
        raise ValueError(f"dimension must be in 1..{_MAX_DIM}")
    return 2.0 * math.pi ** (dim / 2.0) / half_gamma(dim)


@dataclass(frozen=True)
class RadialCase:
    """Radial profile pair on [0, r_max] driving ball-integral ratios."""

    dim: int
    f: RealFn
    g: RealFn
    r_max: float

    def __post_init__(self) -> None:
        if not 1 <= self.dim <= _MAX_DIM:
            raise ValueError(f"dimension must be in 1..{_MAX_DIM}")
        if self.r_max <= 0.0:
            raise ValueError("r_max must be positive")

    def label(self) -> str:
        return f"{self.f.name or 'f'}_over_{self.g.name or 'g'}_dim{self.dim}"


def radial_integral(case: RadialCase, r: float, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Integral of f(r - |x|) over the dim-ball of radius r, via the
    reduction to the order-dim antiderivative of f at 0."""
    if not 0.0 < r <= case.r_max:
        raise ValueError(f"radius must lie in (0, {case.r_max}]")
    iv = Interval(0.0, case.r_max, 0.0)
    spec = AntiderivSpec(n=case.dim, f=case.f, c=0.0, iv=iv)
    return ball_constant(case.dim) * math.factorial(case.dim - 1) * antideriv_cauchy(spec, r, cfg)


def _uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Counter-based splitmix64 stream as floats in [0, 1)."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    z = np.uint64(seed % 2**64) + (idx + np.uint64(1)) * _GAMMA
    z ^= z >> np.uint64(30)
    z *= _MIX1
    z ^= z >> np.uint64(27)
    z *= _MIX2
    z ^= z >> np.uint64(31)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def monte_carlo_ball(
    case: RadialCase, r: float, samples: int, seed: int
) -> tuple[float, float]:
    """(estimate, standard error) of the ball integral of f(r - |x|).

    Uniform sampling of the bounding cube with a ball-indicator weight;
    rejected points contribute zero, so the estimator covers both the ball
    volume and the profile.  Bit-reproducible for a fixed seed regardless
    of batching.
    """
    if case.dim > 3:
        raise ValueError("rejection sampling is practical only for dimensions 1..3")
    if samples < 10_000:
        raise ValueError("need at least 1e4 samples")
    dim = case.dim
    f = case.f.eval
    total = 0.0
    total_sq = 0.0
    done = 0
    batch = 200_000
    while done < samples:
        m = min(batch, samples - done)
        u = _uniforms(seed, done * dim, m * dim).reshape(m, dim)
        pts = (2.0 * u - 1.0) * r
        rad = np.sqrt((pts * pts).sum(axis=1))
        vals = np.zeros(m)
        inside = np.nonzero(rad <= r)[0]
        for j in inside:
            vals[j] = f(r - rad[j])
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        done += m
    cube = (2.0 * r) ** dim
    mean_v = total / samples
    var = max(total_sq / samples - mean_v * mean_v, 0.0) * samples / (samples - 1)
    return cube * mean_v, cube * math.sqrt(var / samples)


def verify_radial_monotone(
    case: RadialCase,
    cfg: QuadConfig = DEFAULT_QUAD,
    grid: Grid | None = None,
    grid_size: int = 17,
    tau_scale: float = TAU_STRICT_SCALE,
) -> tuple[MonotonicityReport, MonotonicityReport]:
    """(report for f/g on the radius range, report for the ball-integral
    ratio over the sampled radii).

    The gamma-factor constants cancel in the ratio, so the with-constant
    and constant-free computations must agree to 1e-12 relatively; this is
    asserted internally.
    """
    iv = Interval(0.0, case.r_max, 0.0)
    if grid is None:
        grid = make_grid(iv, grid_size, exclude_base=True)
    hyp_grid = make_grid(iv, max(len(grid), 9))
    if sign_check(case.g, iv, hyp_grid) is Sign.MIXED:
        raise HypothesisViolationError("g must keep one strict sign on [0, r_max]")
    excl = case.f.exclusions | case.g.exclusions
    hyp = monotonicity_of(
        [(t, case.f.eval(t) / case.g.eval(t)) for t in hyp_grid.points if t not in excl],
        tau_scale,
    )
    fa = AntiderivSpec(n=case.dim, f=case.f, c=0.0, iv=iv)
    ga = AntiderivSpec(n=case.dim, f=case.g, c=0.0, iv=iv)
    k = ball_constant(case.dim) * math.factorial(case.dim - 1)
    concl_samples = []
    for rr in grid.points:
        if rr <= iv.base_gap:
            continue
        num = antideriv_cauchy(fa, rr, cfg)
        den = antideriv_cauchy(ga, rr, cfg)
        plain = num / den
        with_const = (k * num) / (k * den)
        if abs(with_const - plain) > 1e-12 * max(1.0, abs(plain)):
            raise ArithmeticError("constant cancellation drifted beyond 1e-12")
        concl_samples.append((rr, with_const))
    return hyp, monotonicity_of(concl_samples, tau_scale)
