"""Core value types: intervals with a base point, evaluable functions with
derivative stacks, and sampling grids that keep clear of the base point.

Everything here is immutable after construction and safe to share across
threads.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import (
    DomainError,
    EmptyGridError,
    InsufficientDerivativesError,
)

# Relative half-width of the exclusion gap around the base point.  Ratio
# constructions are undefined exactly at c, so numeric grids must not land
# there; the gap is scaled by the interval width.
BASE_GAP_SCALE = 1e-9

_MAX_FD_ORDER = 4


@dataclass(frozen=True)
class Interval:
    """Bounded closed interval [lo, hi] with a base point c in [lo, hi].

    Infinite endpoints are rejected: all evaluation in this package is on
    bounded intervals.
    """

    lo: float
    hi: float
    c: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and math.isfinite(self.c)):
            raise DomainError("interval endpoints and base point must be finite")
        if not self.lo < self.hi:
            raise DomainError(f"degenerate interval [{self.lo}, {self.hi}]")
        if not self.lo <= self.c <= self.hi:
            raise DomainError(f"base point {self.c} outside [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def base_gap(self) -> float:
        """Absolute half-width of the exclusion gap around the base point."""
        return BASE_GAP_SCALE * self.width

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack


@dataclass(frozen=True)
class RealFn:
    """Pointwise-evaluable scalar function with an optional derivative stack.

    ``derivs[k-1]`` is trusted as the k-th derivative (use
    :func:`spot_check_derivatives` to catch misdeclared stacks).
    ``exclusions`` lists the finitely many points where ``eval`` is
    undefined; quadrature and sampling skip them.
    """

    eval: Callable[[float], float]
    derivs: tuple[Callable[[float], float], ...] = ()
    exclusions: frozenset[float] = frozenset()
    name: str = ""

    def __call__(self, x: float) -> float:
        return self.eval(x)

    @property
    def order(self) -> int:
        """Number of derivatives available."""
        return len(self.derivs)

    def deriv(self, k: int) -> Callable[[float], float]:
        """The k-th derivative as a callable; k = 0 is the function itself."""
        if k == 0:
            return self.eval
        if k > len(self.derivs):
            raise InsufficientDerivativesError(
                f"{self.name or 'function'} has {len(self.derivs)} derivatives, need {k}"
            )
        return self.derivs[k - 1]


@dataclass(frozen=True)
class Grid:
    """Strictly increasing finite sample points."""

    points: tuple[float, ...]
    excludes_base: bool = False

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("grid points must be strictly increasing")

    def __iter__(self) -> Iterator[float]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def make_grid(iv: Interval, count: int, exclude_base: bool = False) -> Grid:
    """Uniform grid of ``count`` points over ``iv``.

    With ``exclude_base``, any point closer than the base-point gap to
    ``iv.c`` is dropped; raises :class:`EmptyGridError` when nothing
    survives.
    """
    if count < 2:
        raise ValueError(f"grid needs at least 2 points, got {count}")
    step = iv.width / (count - 1)
    pts = [iv.lo + j * step for j in range(count)]
    pts[-1] = iv.hi
    pts = [min(max(p, iv.lo), iv.hi) for p in pts]
    if exclude_base:
        gap = iv.base_gap
        pts = [p for p in pts if abs(p - iv.c) >= gap]
        if not pts:
            raise EmptyGridError("every grid point fell inside the base-point gap")
    return Grid(points=tuple(pts), excludes_base=exclude_base)


def finite_diff(f: RealFn, k: int, x: float, h: float, iv: Interval | None = None) -> float:
    """Central finite-difference estimate of the k-th derivative at x.

    Uses the half-step binomial stencil spanning x +- k*h/2 (second order
    in h), for k up to 4.  With ``iv`` given, raises :class:`DomainError`
    when the stencil leaves the interval.
    """
    if not 0 <= k <= _MAX_FD_ORDER:
        raise ValueError(f"stencil order must be in 0..{_MAX_FD_ORDER}, got {k}")
    if h <= 0:
        raise ValueError("step must be positive")
    if k == 0:
        return f.eval(x)
    if iv is not None:
        half_span = k * h / 2.0
        if not (iv.contains(x - half_span) and iv.contains(x + half_span)):
            raise DomainError(f"stencil around {x} with span {half_span} leaves the interval")
    acc = 0.0
    for i in range(k + 1):
        acc += (-1.0) ** i * math.comb(k, i) * f.eval(x + (k / 2.0 - i) * h)
    return acc / h**k


def spot_check_derivatives(
    f: RealFn,
    iv: Interval,
    orders: Sequence[int] = (1, 2),
    points: int = 10,
    seed: int = 0,
) -> float:
    """Validate a declared derivative stack against finite differences.

    Samples ``points`` random interior locations per order and requires
    agreement within max(1e-4, 1e-3 * |derivative|).  Returns the worst
    absolute discrepancy; raises ValueError on a mismatch.
    """
    rng = random.Random(seed)
    margin = 0.1 * iv.width
    worst = 0.0
    for k in orders:
        if k > len(f.derivs):
            continue
        dk = f.derivs[k - 1]
        h = 1e-5 if k == 1 else 1e-4
        for _ in range(points):
            x = rng.uniform(iv.lo + margin, iv.hi - margin)
            if any(abs(x - e) < 10.0 * h for e in f.exclusions):
                continue
            want = dk(x)
            got = finite_diff(f, k, x, h)
            err = abs(got - want)
            if err > max(1e-4, 1e-3 * abs(want)):
                raise ValueError(
                    f"declared derivative {k} of {f.name or 'function'} disagrees "
                    f"with finite differences at x={x}: {want} vs {got}"
                )
            worst = max(worst, err)
    return worst
