"""Monotonicity and convexity certification: sampling-based verdicts, sign
checks, and the verifiers for the fraction rules, zero sets, and the
corollaries on means.

All verifiers are pure; a batch of cases may run fully in parallel.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .calculus import (
    DEFAULT_QUAD,
    AntiderivSpec,
    QuadConfig,
    antideriv_cauchy,
    mean,
    taylor_remainder,
)
from .errors import HypothesisViolationError, InsufficientDerivativesError
from .funcs import Grid, Interval, RealFn, make_grid

# Resolution thresholds: exact strictness and exact zero sets are not
# decidable from samples, so margins separate genuine ties from quadrature
# noise.  Both scale with the largest sampled magnitude.
TAU_STRICT_SCALE = 1e-9
TAU_ZERO_SCALE = 1e-8


class Verdict(str, enum.Enum):
    STRICTLY_INCREASING = "strictly_increasing"
    NONDECREASING = "nondecreasing"
    STRICTLY_DECREASING = "strictly_decreasing"
    NONINCREASING = "nonincreasing"
    NONE = "none"

    @property
    def is_increasing(self) -> bool:
        return self in (Verdict.STRICTLY_INCREASING, Verdict.NONDECREASING)

    @property
    def is_decreasing(self) -> bool:
        return self in (Verdict.STRICTLY_DECREASING, Verdict.NONINCREASING)

    @property
    def is_strict(self) -> bool:
        return self in (Verdict.STRICTLY_INCREASING, Verdict.STRICTLY_DECREASING)


_FLIP = {
    Verdict.STRICTLY_INCREASING: Verdict.STRICTLY_DECREASING,
    Verdict.STRICTLY_DECREASING: Verdict.STRICTLY_INCREASING,
    Verdict.NONDECREASING: Verdict.NONINCREASING,
    Verdict.NONINCREASING: Verdict.NONDECREASING,
    Verdict.NONE: Verdict.NONE,
}


def flip_verdict(v: Verdict) -> Verdict:
    """Verdict for -f given the verdict for f."""
    return _FLIP[v]


def inherits(hypothesis: Verdict, conclusion: Verdict) -> bool:
    """True when the conclusion verdict is at least as strong as, and of the
    same direction as, the hypothesis verdict.

    A constant hypothesis is reported as nondecreasing (tie-break), so its
    conclusion may be nondecreasing or strictly increasing.
    """
    if hypothesis is Verdict.STRICTLY_INCREASING:
        return conclusion is Verdict.STRICTLY_INCREASING
    if hypothesis is Verdict.STRICTLY_DECREASING:
        return conclusion is Verdict.STRICTLY_DECREASING
    if hypothesis is Verdict.NONDECREASING:
        return conclusion.is_increasing
    if hypothesis is Verdict.NONINCREASING:
        return conclusion.is_decreasing
    return False


class Sign(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"


@dataclass(frozen=True)
class MonotonicityReport:
    """Verdict for a sampled sequence plus the evidence behind it.

    ``violations`` holds (x1, x2, v1, v2) pairs: for verdict ``none`` the
    counterexamples to both directions, for a weak verdict the ties that
    blocked strictness, and nothing for a strict verdict.
    """

    verdict: Verdict
    violations: tuple[tuple[float, float, float, float], ...]
    samples: tuple[tuple[float, float], ...]
    tau_strict: float


@dataclass(frozen=True)
class TheoremCase:
    """Hypothesis bundle for the fraction-rule verifiers: a function pair,
    an order, an interval with base point, and the expected verdict of the
    hypothesis ratio."""

    f: RealFn
    g: RealFn
    n: int
    iv: Interval
    expected: Verdict

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("order must be at least 1")

    def label(self) -> str:
        return (
            f"{self.f.name or 'f'}_over_{self.g.name or 'g'}_n{self.n}"
            f"_iv{self.iv.lo:g}_{self.iv.hi:g}_c{self.iv.c:g}"
        )


def monotonicity_of(
    samples: Iterable[tuple[float, float]], tau_scale: float = TAU_STRICT_SCALE
) -> MonotonicityReport:
    """Classify a sampled sequence.

    Strict verdicts need every consecutive step to clear the resolution
    margin; steps within the margin count as ties, so a constant sequence
    reports nondecreasing.
    """
    pts = tuple((float(x), float(v)) for x, v in samples)
    if len(pts) < 3:
        raise ValueError(f"need at least 3 samples, got {len(pts)}")
    xs = [x for x, _ in pts]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("sample x-coordinates must be strictly increasing")
    tau = tau_scale * (1.0 + max(abs(v) for _, v in pts))
    rises: list[tuple[float, float, float, float]] = []
    falls: list[tuple[float, float, float, float]] = []
    ties: list[tuple[float, float, float, float]] = []
    for (x1, v1), (x2, v2) in zip(pts, pts[1:]):
        dv = v2 - v1
        pair = (x1, x2, v1, v2)
        if dv > tau:
            rises.append(pair)
        elif dv < -tau:
            falls.append(pair)
        else:
            ties.append(pair)
    if rises and falls:
        verdict, viol = Verdict.NONE, tuple(falls + rises)
    elif not falls and not ties:
        verdict, viol = Verdict.STRICTLY_INCREASING, ()
    elif not rises and not ties:
        verdict, viol = Verdict.STRICTLY_DECREASING, ()
    elif not falls:
        verdict, viol = Verdict.NONDECREASING, tuple(ties)
    else:
        verdict, viol = Verdict.NONINCREASING, tuple(ties)
    return MonotonicityReport(verdict=verdict, violations=viol, samples=pts, tau_strict=tau)


def sign_check(g: RealFn, iv: Interval, grid: Grid) -> Sign:
    """Positive/negative when every sampled value keeps that strict sign;
    declared exclusion points are skipped; anything else is mixed."""
    vals = []
    for x in grid.points:
        if not iv.contains(x):
            raise ValueError(f"grid point {x} outside [{iv.lo}, {iv.hi}]")
        if x in g.exclusions:
            continue
        vals.append(g.eval(x))
    if vals and all(v > 0.0 for v in vals):
        return Sign.POSITIVE
    if vals and all(v < 0.0 for v in vals):
        return Sign.NEGATIVE
    return Sign.MIXED


def _ratio_samples(num, den, points, exclusions) -> list[tuple[float, float]]:
    # Poles of the ratio (den == 0) are skipped: the ratio is undefined
    # there, which only arises on forced runs with a sign-changing g.
    out = []
    for x in points:
        if x in exclusions:
            continue
        d = den(x)
        if d == 0.0:
            continue
        out.append((x, num(x) / d))
    return out


def verify_gromov(
    case: TheoremCase,
    cfg: QuadConfig = DEFAULT_QUAD,
    grid_size: int = 33,
    force: bool = False,
    tau_scale: float = TAU_STRICT_SCALE,
) -> tuple[MonotonicityReport, MonotonicityReport]:
    """Integral fraction rule: reports for the hypothesis ratio f/g on the
    interval and for the ratio of order-n antiderivatives on the punctured
    interval.

    The conclusion verdict is predicted to be at least as strong as, and of
    the same direction as, the hypothesis verdict.  ``force`` skips the
    sign precondition on g for sharpness experiments.
    """
    hyp_grid = make_grid(case.iv, grid_size)
    if not force and sign_check(case.g, case.iv, hyp_grid) is Sign.MIXED:
        raise HypothesisViolationError(
            "g must keep one strict sign on the grid (up to declared exclusions)"
        )
    excl = case.f.exclusions | case.g.exclusions
    hyp = monotonicity_of(
        _ratio_samples(case.f.eval, case.g.eval, hyp_grid.points, excl), tau_scale
    )
    concl_grid = make_grid(case.iv, grid_size, exclude_base=True)
    fa = AntiderivSpec(case.n, case.f, case.iv.c, case.iv)
    ga = AntiderivSpec(case.n, case.g, case.iv.c, case.iv)
    concl_samples = []
    for x in concl_grid.points:
        den = antideriv_cauchy(ga, x, cfg)
        if den == 0.0:
            continue  # only reachable on forced runs
        concl_samples.append((x, antideriv_cauchy(fa, x, cfg) / den))
    return hyp, monotonicity_of(concl_samples, tau_scale)


def verify_lhopital(
    case: TheoremCase,
    cfg: QuadConfig = DEFAULT_QUAD,
    grid_size: int = 33,
    tau_scale: float = TAU_STRICT_SCALE,
) -> tuple[MonotonicityReport, MonotonicityReport]:
    """Derivative fraction rule: reports for the ratio of n-th derivatives
    and for the ratio of order-(n-1) Taylor remainders on the punctured
    interval (no quadrature: remainders come from the derivative stacks).

    Same inheritance contract as :func:`verify_gromov`.
    """
    n = case.n
    if len(case.f.derivs) < n or len(case.g.derivs) < n:
        raise InsufficientDerivativesError(f"both functions need {n} derivatives")
    grid = make_grid(case.iv, grid_size)
    gn = case.g.derivs[n - 1]
    gn_vals = [gn(x) for x in grid.points if x not in case.g.exclusions]
    if not gn_vals or any(v == 0.0 for v in gn_vals) or (min(gn_vals) < 0.0 < max(gn_vals)):
        raise HypothesisViolationError("g's n-th derivative vanishes on the grid")
    fn = case.f.derivs[n - 1]
    excl = case.f.exclusions | case.g.exclusions
    hyp = monotonicity_of(_ratio_samples(fn, gn, grid.points, excl), tau_scale)
    c = case.iv.c
    concl_grid = make_grid(case.iv, grid_size, exclude_base=True)
    concl_samples = [
        (x, taylor_remainder(n - 1, case.f, c, x) / taylor_remainder(n - 1, case.g, c, x))
        for x in concl_grid.points
    ]
    return hyp, monotonicity_of(concl_samples, tau_scale)


def zero_set_check_A(
    spec: AntiderivSpec,
    grid: Grid,
    cfg: QuadConfig = DEFAULT_QUAD,
    tau_scale: float = TAU_ZERO_SCALE,
) -> bool:
    """True iff the order-n antiderivative of a sign-preserving f vanishes
    only at the base point: zero at c, and clear of zero (beyond the noise
    threshold) at every grid point off the base-point gap."""
    if sign_check(spec.f, spec.iv, grid) is Sign.MIXED:
        raise HypothesisViolationError("f must keep one strict sign on the grid")
    if antideriv_cauchy(spec, spec.c, cfg) != 0.0:
        return False
    gap = spec.iv.base_gap
    vals = [antideriv_cauchy(spec, x, cfg) for x in grid.points if abs(x - spec.c) > gap]
    if not vals:
        return True
    tau = tau_scale * (1.0 + max(abs(v) for v in vals))
    return all(abs(v) > tau for v in vals)


def _remainder_deriv(m: int, f: RealFn, c: float, x: float, k: int) -> float:
    """k-th derivative of the order-m Taylor remainder at x: f's k-th
    derivative minus the k-th derivative of the degree-m polynomial."""
    fk = f.eval(x) if k == 0 else f.derivs[k - 1](x)
    dx = x - c
    acc = 0.0
    p = 1.0
    for j in range(k, m + 1):
        fjc = f.eval(c) if j == 0 else f.derivs[j - 1](c)
        acc += fjc * p
        p *= dx / (j - k + 1)
    return fk - acc


def zero_set_check_R(
    n: int,
    f: RealFn,
    c: float,
    iv: Interval,
    grid: Grid,
    tau_scale: float = TAU_ZERO_SCALE,
) -> bool:
    """True iff every derivative of the order-(n-1) Taylor remainder up to
    order n-1 is nonzero off the base point at the grid points.

    Requires a derivative stack of length n and an n-th derivative that
    keeps one strict sign on the grid.  The base point may lie outside the
    sampled range; only samples off the base-point gap are tested.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    if len(f.derivs) < n:
        raise InsufficientDerivativesError(f"need {n} derivatives, have {len(f.derivs)}")
    fn = f.derivs[n - 1]
    fn_vals = [fn(x) for x in grid.points if x not in f.exclusions]
    if not fn_vals or any(v == 0.0 for v in fn_vals) or (min(fn_vals) < 0.0 < max(fn_vals)):
        raise HypothesisViolationError("f's n-th derivative vanishes on the grid")
    gap = iv.base_gap
    for k in range(n):
        vals = [
            _remainder_deriv(n - 1, f, c, x, k)
            for x in grid.points
            if abs(x - c) > gap and x not in f.exclusions
        ]
        if not vals:
            continue
        tau = tau_scale * (1.0 + max(abs(v) for v in vals))
        if not all(abs(v) > tau for v in vals):
            return False
    return True


def verify_mean_monotone(
    n: int,
    f: RealFn,
    c: float,
    iv: Interval,
    cfg: QuadConfig = DEFAULT_QUAD,
    grid_size: int = 33,
    tau_scale: float = TAU_STRICT_SCALE,
) -> MonotonicityReport:
    """Monotonicity report for the order-n mean of f on the punctured
    interval; contract: same direction as f, strict when f is strict."""
    if c != iv.c:
        raise ValueError("base point must coincide with the interval's base point")
    grid = make_grid(iv, grid_size, exclude_base=True)
    samples = [(x, mean(n, f, c, x, cfg)) for x in grid.points]
    return monotonicity_of(samples, tau_scale)


def verify_mean_convex(
    n: int,
    f: RealFn,
    c: float,
    iv: Interval,
    cfg: QuadConfig = DEFAULT_QUAD,
    grid_size: int = 33,
    tau_scale: float = TAU_STRICT_SCALE,
) -> bool:
    """Discrete convexity certificate for the order-n mean of a convex f.

    The mean extends continuously by f(c) at the base point.  Checks that
    consecutive chord slopes are nondecreasing (within the strictness
    margin) and that the chord ratio from (c, f(c)) is nondecreasing.
    """
    if c != iv.c:
        raise ValueError("base point must coincide with the interval's base point")
    grid = make_grid(iv, grid_size, exclude_base=True)
    fc = f.eval(c)
    pts = sorted([(x, mean(n, f, c, x, cfg)) for x in grid.points] + [(c, fc)])
    tau = tau_scale * (1.0 + max(abs(v) for _, v in pts))
    for (x1, v1), (x2, v2), (x3, v3) in zip(pts, pts[1:], pts[2:]):
        if (v2 - v1) / (x2 - x1) > (v3 - v2) / (x3 - x2) + tau:
            return False
    chords = [(x, (v - fc) / (x - c)) for x, v in pts if x != c]
    rep = monotonicity_of(chords, tau_scale)
    return rep.verdict.is_increasing
