"""Quadrature engine and the weighted-integral constructions built on it:
high-order antiderivatives, means of order n, Taylor polynomials and
remainders, plus their cross-oracles.

All functions here are pure; concurrent evaluation over grid points is safe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import (
    BasePointError,
    ConvergenceError,
    DomainError,
    InsufficientDerivativesError,
)
from .funcs import BASE_GAP_SCALE, Interval, RealFn

_MAX_REPEATED_ORDER = 4


@dataclass(frozen=True)
class QuadConfig:
    """Adaptive-quadrature tolerances and refinement limits."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_depth: int = 40
    min_intervals: int = 8

    def __post_init__(self) -> None:
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if not 1 <= self.max_depth <= 60:
            raise ValueError("max_depth must be in 1..60")
        if self.min_intervals < 1:
            raise ValueError("min_intervals must be positive")


DEFAULT_QUAD = QuadConfig()


@dataclass(frozen=True)
class AntiderivSpec:
    """Order, integrand, base point, and interval of a repeated antiderivative."""

    n: int
    f: RealFn
    c: float
    iv: Interval

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("order must be at least 1")
        if self.c != self.iv.c:
            raise ValueError("base point must coincide with the interval's base point")


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def _refine(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise ConvergenceError(
            f"adaptive Simpson stalled on [{a}, {b}]: "
            f"residual {abs(delta) / 15.0:.3e} above tolerance {tol:.3e}"
        )
    half = 0.5 * tol
    return _refine(f, a, fa, m, fm, lm, flm, left, half, depth - 1) + _refine(
        f, m, fm, b, fb, rm, frm, right, half, depth - 1
    )


def _simpson_adaptive(f, a: float, b: float, cfg: QuadConfig) -> float:
    n0 = cfg.min_intervals
    xs = [a + i * (b - a) / n0 for i in range(n0 + 1)]
    xs[-1] = b
    fs = [f(x) for x in xs]
    panels = []
    rough = 0.0
    for i in range(n0):
        m = 0.5 * (xs[i] + xs[i + 1])
        fm = f(m)
        whole = _simpson(fs[i], fm, fs[i + 1], xs[i + 1] - xs[i])
        panels.append((xs[i], fs[i], xs[i + 1], fs[i + 1], m, fm, whole))
        rough += whole
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(rough)) / n0
    return sum(
        _refine(f, pa, pfa, pb, pfb, pm, pfm, pw, tol, cfg.max_depth)
        for pa, pfa, pb, pfb, pm, pfm, pw in panels
    )


def _midpoint_doubling(f, a: float, b: float, cfg: QuadConfig) -> float:
    """Composite midpoint with interval doubling; never evaluates a or b."""
    width = b - a

    def midsum(m: int) -> float:
        h = width / m
        return h * sum(f(a + (j + 0.5) * h) for j in range(m))

    m = max(cfg.min_intervals, 16)
    prev = midsum(m)
    # The open midpoint rule is second order; past ~1e6 panels rounding
    # dominates, so the doubling count is capped below max_depth.
    for _ in range(min(cfg.max_depth, 16)):
        m *= 2
        cur = midsum(m)
        if abs(cur - prev) / 3.0 <= max(cfg.abs_tol, cfg.rel_tol * abs(cur)):
            return cur + (cur - prev) / 3.0
        prev = cur
    raise ConvergenceError(f"composite midpoint stalled on [{a}, {b}] at {m} panels")


def integrate(f: RealFn, a: float, b: float, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Signed integral of f over [a, b].

    Adaptive Simpson with Richardson error control.  The range is split at
    declared exclusion points; subintervals whose endpoint is excluded use
    the composite midpoint rule instead, so f is never evaluated where it
    is undefined.  Exactly antisymmetric under swapping a and b.
    """
    if a == b:
        return 0.0
    sign = 1.0
    lo, hi = a, b
    if lo > hi:
        lo, hi = hi, lo
        sign = -1.0
    cuts = [lo, *sorted(e for e in f.exclusions if lo < e < hi), hi]
    total = 0.0
    for seg_lo, seg_hi in zip(cuts, cuts[1:]):
        if seg_lo in f.exclusions or seg_hi in f.exclusions:
            total += _midpoint_doubling(f.eval, seg_lo, seg_hi, cfg)
        else:
            total += _simpson_adaptive(f.eval, seg_lo, seg_hi, cfg)
    return sign * total


def _require_inside(iv: Interval, x: float) -> None:
    if not iv.contains(x, slack=1e-12 * iv.width):
        raise DomainError(f"{x} outside [{iv.lo}, {iv.hi}]")


def _weighted_integrand(f: RealFn, n: int, x: float) -> RealFn:
    # The weight (x - t)^(n-1) is folded into the integrand analytically;
    # for n up to a few it is a benign polynomial factor.
    if n == 1:
        return f
    e = n - 1
    base = f.eval
    return RealFn(lambda t: base(t) * (x - t) ** e, exclusions=f.exclusions)


def antideriv_cauchy(spec: AntiderivSpec, x: float, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Order-n antiderivative of f from the base point, evaluated at x.

    Computed as the single weighted integral
    ``integral of f(t) * (x - t)^(n-1) dt / (n-1)!`` from c to x.
    Returns exactly 0 at x = c.
    """
    _require_inside(spec.iv, x)
    if x == spec.c:
        return 0.0
    integrand = _weighted_integrand(spec.f, spec.n, x)
    return integrate(integrand, spec.c, x, cfg) / math.factorial(spec.n - 1)


def _repeated_on_grid(spec: AntiderivSpec, sgn: float, width: float, m: int) -> float:
    h = width / m
    us = np.linspace(0.0, width, m + 1)
    f = spec.f.eval
    vals = np.empty(m + 1)
    for j, u in enumerate(us):
        t = spec.c + sgn * u
        if t in spec.f.exclusions:
            # Value-only nudge off a declared undefined point; the nodes
            # and weights are unchanged.
            t += sgn * h * 1e-3
        vals[j] = f(t)
    for _ in range(spec.n):
        vals = cumulative_simpson(vals, dx=h, initial=0.0)
    return sgn**spec.n * float(vals[-1])


def antideriv_repeated(spec: AntiderivSpec, x: float, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Order-n antiderivative at x evaluated as the literal nested integral.

    Each nesting level is a cumulative Simpson integration over a shared
    uniform grid from c to x; the grid is doubled until two refinements
    agree within tolerance.  Independent of the weighted single-integral
    route, so the two serve as cross-oracles.  Orders above 4 are refused:
    this is an oracle for small n, not a production path.
    """
    if spec.n > _MAX_REPEATED_ORDER:
        raise ValueError(f"repeated antiderivative capped at order {_MAX_REPEATED_ORDER}")
    _require_inside(spec.iv, x)
    if x == spec.c:
        return 0.0
    span = x - spec.c
    sgn = 1.0 if span > 0 else -1.0
    width = abs(span)
    m = 256
    prev = _repeated_on_grid(spec, sgn, width, m)
    for _ in range(12):
        m *= 2
        cur = _repeated_on_grid(spec, sgn, width, m)
        if abs(cur - prev) <= max(cfg.abs_tol, cfg.rel_tol * abs(cur)):
            return cur
        prev = cur
    raise ConvergenceError("nested-integral grid refinement did not converge")


def antideriv_semigroup_check(
    spec: AntiderivSpec, k: int, x: float, cfg: QuadConfig = DEFAULT_QUAD
) -> tuple[float, float]:
    """Pair (order-n antiderivative at x, order-k antiderivative of the
    order-(n-k) antiderivative at x).

    The two coincide exactly in the continuum; the caller asserts numerical
    closeness.  The inner antiderivative is wrapped as a plain function and
    pushed through the weighted-integral route again.
    """
    if spec.n < 2:
        raise ValueError("nesting identity needs order at least 2")
    if not 1 <= k <= spec.n - 1:
        raise ValueError(f"k must be in 1..{spec.n - 1}, got {k}")
    direct = antideriv_cauchy(spec, x, cfg)
    inner_spec = AntiderivSpec(n=spec.n - k, f=spec.f, c=spec.c, iv=spec.iv)
    inner = RealFn(lambda t: antideriv_cauchy(inner_spec, t, cfg), name="inner_antideriv")
    nested = antideriv_cauchy(AntiderivSpec(n=k, f=inner, c=spec.c, iv=spec.iv), x, cfg)
    return direct, nested


def mean(n: int, f: RealFn, c: float, x: float, cfg: QuadConfig = DEFAULT_QUAD) -> float:
    """Weighted average of f over the span from c to x (mean of order n).

    ``n / (x - c)^n * integral of f(t) * (x - t)^(n-1) dt`` from c to x;
    equals the ratio of the order-n antiderivatives of f and of 1.
    Undefined at the base point.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    # Scale-aware stand-in for the interval-width gap: mean() does not
    # receive an interval, only the two abscissae.
    gap = BASE_GAP_SCALE * (1.0 + max(abs(x), abs(c)))
    if abs(x - c) < gap:
        raise BasePointError(f"x = {x} lies inside the exclusion gap around c = {c}")
    integrand = _weighted_integrand(f, n, x)
    return n * integrate(integrand, c, x, cfg) / (x - c) ** n


def taylor_poly(n: int, f: RealFn, c: float, x: float) -> float:
    """Degree-n Taylor polynomial of f about c, evaluated at x.

    Exact finite sum over the declared derivative stack; no quadrature.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > len(f.derivs):
        raise InsufficientDerivativesError(
            f"need {n} derivatives, {f.name or 'function'} has {len(f.derivs)}"
        )
    acc = f.eval(c)
    dx = x - c
    p = 1.0
    for k in range(1, n + 1):
        p *= dx / k
        acc += f.derivs[k - 1](c) * p
    return acc


def taylor_remainder(n: int, f: RealFn, c: float, x: float) -> float:
    """f(x) minus its degree-n Taylor polynomial about c; vanishes at x = c."""
    return f.eval(x) - taylor_poly(n, f, c, x)


def remainder_integral_check(
    n: int, f: RealFn, c: float, x: float, cfg: QuadConfig = DEFAULT_QUAD
) -> tuple[float, float]:
    """Pair (order-(n-1) Taylor remainder at x, order-n antiderivative of
    the n-th derivative at x).

    The two sides coincide for functions with an integrable n-th
    derivative; the caller asserts closeness.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    if n > len(f.derivs):
        raise InsufficientDerivativesError(
            f"need {n} derivatives, {f.name or 'function'} has {len(f.derivs)}"
        )
    lhs = taylor_remainder(n - 1, f, c, x)
    if x == c:
        return lhs, 0.0
    iv = Interval(min(c, x), max(c, x), c)
    dn = RealFn(f.derivs[n - 1], exclusions=f.exclusions, name=f"{f.name}^({n})")
    rhs = antideriv_cauchy(AntiderivSpec(n=n, f=dn, c=c, iv=iv), x, cfg)
    return lhs, rhs
