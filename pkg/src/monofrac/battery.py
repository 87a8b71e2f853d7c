"""The standard function battery shared by the invariant tests and the CLI
suites, and the case tables built from it.

Battery members carry analytic derivative stacks where smooth; the
nonsmooth members (absolute shifts, clamps) carry none.
"""
from __future__ import annotations

import math

from .funcs import Interval, RealFn
from .monotone import TheoremCase, Verdict

_ZERO = lambda x: 0.0  # noqa: E731

ONE = RealFn(lambda x: 1.0, derivs=(_ZERO, _ZERO, _ZERO), name="one")
NEG_ONE = RealFn(lambda x: -1.0, derivs=(_ZERO, _ZERO, _ZERO), name="neg_one")
IDENT = RealFn(lambda x: x, derivs=(lambda x: 1.0, _ZERO, _ZERO), name="ident")
NEG_IDENT = RealFn(lambda x: -x, derivs=(lambda x: -1.0, _ZERO, _ZERO), name="neg_ident")
SQUARE = RealFn(lambda x: x * x, derivs=(lambda x: 2.0 * x, lambda x: 2.0, _ZERO), name="square")
HALF_SQUARE = RealFn(
    lambda x: 0.5 * x * x, derivs=(lambda x: x, lambda x: 1.0, _ZERO), name="half_square"
)
NEG_HALF_SQUARE = RealFn(
    lambda x: -0.5 * x * x, derivs=(lambda x: -x, lambda x: -1.0, _ZERO), name="neg_half_square"
)
CUBE = RealFn(
    lambda x: x**3, derivs=(lambda x: 3.0 * x * x, lambda x: 6.0 * x, lambda x: 6.0), name="cube"
)
SIXTH_CUBE = RealFn(
    lambda x: x**3 / 6.0,
    derivs=(lambda x: 0.5 * x * x, lambda x: x, lambda x: 1.0),
    name="sixth_cube",
)
EXP = RealFn(math.exp, derivs=(math.exp, math.exp, math.exp), name="exp")
NEG_EXP = RealFn(
    lambda x: -math.exp(x),
    derivs=(lambda x: -math.exp(x), lambda x: -math.exp(x), lambda x: -math.exp(x)),
    name="neg_exp",
)
EXP_DECAY = RealFn(
    lambda x: math.exp(-x),
    derivs=(lambda x: -math.exp(-x), lambda x: math.exp(-x), lambda x: -math.exp(-x)),
    name="exp_decay",
)
RUNGE = RealFn(
    lambda x: 1.0 / (1.0 + x * x),
    derivs=(
        lambda x: -2.0 * x / (1.0 + x * x) ** 2,
        lambda x: (6.0 * x * x - 2.0) / (1.0 + x * x) ** 3,
        lambda x: 24.0 * x * (1.0 - x * x) / (1.0 + x * x) ** 4,
    ),
    name="runge",
)
# Weakly increasing: flat on [0, 1], then the identity.
CLAMP = RealFn(lambda x: max(x, 1.0), name="clamp1")
# Quadratic with a declared puncture at its zero: keeps a strict sign
# everywhere except on the (finite) excluded set.
SQUARE_PUNCTURED = RealFn(
    lambda x: x * x,
    derivs=(lambda x: 2.0 * x, lambda x: 2.0, _ZERO),
    exclusions=frozenset({0.0}),
    name="square_punctured",
)


def abs_shift(c: float) -> RealFn:
    """|x - c|: continuous, convex, no derivative stack."""
    return RealFn(lambda x: abs(x - c), name=f"abs_shift_{c:g}")


def negate(f: RealFn) -> RealFn:
    """-f with the derivative stack negated alongside."""
    return RealFn(
        lambda x: -f.eval(x),
        derivs=tuple((lambda x, d=d: -d(x)) for d in f.derivs),
        exclusions=f.exclusions,
        name=f"neg_{f.name}" if f.name else "",
    )


def smooth_battery() -> tuple[RealFn, ...]:
    """Battery members with full derivative stacks."""
    return (ONE, IDENT, SQUARE, CUBE, EXP, NEG_EXP, RUNGE)


def full_battery(c: float) -> tuple[RealFn, ...]:
    """Smooth battery plus the absolute shift anchored at c."""
    return smooth_battery() + (abs_shift(c),)


def battery_intervals() -> tuple[Interval, ...]:
    """The two battery intervals, each with a left-endpoint and an interior
    base point."""
    return (
        Interval(0.0, 2.0, 0.0),
        Interval(0.0, 2.0, 0.5),
        Interval(-1.0, 1.0, 0.0),
        Interval(-1.0, 1.0, -1.0),
    )


_INC = Verdict.STRICTLY_INCREASING
_DEC = Verdict.STRICTLY_DECREASING
_NONDEC = Verdict.NONDECREASING


def gromov_cases() -> tuple[TheoremCase, ...]:
    """Integral-rule battery: orders 1..3, left-endpoint and interior base
    points, both signs of g, both ratio directions, strict and weak."""
    cases: list[TheoremCase] = []
    for n in (1, 2, 3):
        for iv in battery_intervals():
            on_02 = iv.lo == 0.0
            cases += [
                TheoremCase(IDENT, ONE, n, iv, _INC),
                TheoremCase(NEG_IDENT, ONE, n, iv, _DEC),
                TheoremCase(EXP, ONE, n, iv, _INC),
                TheoremCase(NEG_EXP, ONE, n, iv, _DEC),
                TheoremCase(ONE, EXP, n, iv, _DEC),
                TheoremCase(EXP, NEG_ONE, n, iv, _DEC),
                TheoremCase(NEG_EXP, NEG_ONE, n, iv, _INC),
                TheoremCase(EXP, EXP, n, iv, _NONDEC),
            ]
            if on_02:
                # x**2 and 1/(1+x**2) are monotone only on [0, 2].
                cases += [
                    TheoremCase(SQUARE, ONE, n, iv, _INC),
                    TheoremCase(RUNGE, ONE, n, iv, _DEC),
                    TheoremCase(CLAMP, ONE, n, iv, _NONDEC),
                ]
            else:
                cases.append(TheoremCase(CUBE, ONE, n, iv, _INC))
    return tuple(cases)


def lhopital_cases() -> tuple[TheoremCase, ...]:
    """Derivative-rule battery: pairs with stacks of length >= n and a
    nonvanishing n-th derivative of g."""
    cases: list[TheoremCase] = []
    for iv in battery_intervals():
        cases += [
            TheoremCase(SQUARE, IDENT, 1, iv, _INC),
            TheoremCase(EXP, IDENT, 1, iv, _INC),
            TheoremCase(NEG_EXP, IDENT, 1, iv, _DEC),
            TheoremCase(IDENT, EXP, 1, iv, _DEC),
            TheoremCase(EXP, EXP, 1, iv, _NONDEC),
            TheoremCase(EXP, HALF_SQUARE, 2, iv, _INC),
            TheoremCase(CUBE, SQUARE, 2, iv, _INC),
            TheoremCase(NEG_EXP, HALF_SQUARE, 2, iv, _DEC),
            TheoremCase(EXP, NEG_HALF_SQUARE, 2, iv, _DEC),
            TheoremCase(EXP, SIXTH_CUBE, 3, iv, _INC),
            TheoremCase(NEG_EXP, SIXTH_CUBE, 3, iv, _DEC),
            TheoremCase(CUBE, SIXTH_CUBE, 3, iv, _NONDEC),
        ]
    return tuple(cases)


def zero_set_A_cases() -> tuple[tuple[RealFn, int, Interval], ...]:
    """Sign-preserving integrands for the antiderivative zero-set check."""
    cases: list[tuple[RealFn, int, Interval]] = []
    for n in (1, 2, 3):
        for iv in battery_intervals():
            cases += [
                (ONE, n, iv),
                (EXP, n, iv),
                (NEG_EXP, n, iv),
                (RUNGE, n, iv),
            ]
            if iv.c == 0.0:
                # Punctured integrand: exercises the open (midpoint)
                # quadrature path around the declared exclusion at c.
                cases.append((SQUARE_PUNCTURED, n, iv))
    cases.append((EXP, 1, Interval(0.0, 1.0, 0.5)))
    return tuple(cases)


def zero_set_R_cases() -> tuple[tuple[RealFn, int, float, Interval], ...]:
    """(f, n, c, interval) tuples with a sign-preserving n-th derivative.

    The base point may sit outside the sampled interval; the remainder is
    still well defined there.
    """
    cases: list[tuple[RealFn, int, float, Interval]] = []
    for iv in battery_intervals():
        c = iv.c
        cases += [
            (EXP, 1, c, iv),
            (EXP, 2, c, iv),
            (EXP, 3, c, iv),
            (NEG_EXP, 2, c, iv),
            (SQUARE, 2, c, iv),
            (CUBE, 3, c, iv),
        ]
    cases.append((SQUARE, 1, 0.0, Interval(0.5, 2.0, 0.5)))
    return tuple(cases)


def mean_monotone_cases() -> tuple[tuple[RealFn, Interval, Verdict], ...]:
    """Monotone battery members with the direction of f itself."""
    i02_0 = Interval(0.0, 2.0, 0.0)
    i02_i = Interval(0.0, 2.0, 0.5)
    i11_0 = Interval(-1.0, 1.0, 0.0)
    i11_l = Interval(-1.0, 1.0, -1.0)
    return (
        (ONE, i02_0, _NONDEC),
        (IDENT, i02_0, _INC),
        (IDENT, i11_0, _INC),
        (SQUARE, i02_0, _INC),
        (SQUARE, i02_i, _INC),
        (CUBE, i11_0, _INC),
        (CUBE, i02_0, _INC),
        (EXP, i02_0, _INC),
        (EXP, i11_l, _INC),
        (NEG_EXP, i02_0, _DEC),
        (NEG_EXP, i11_0, _DEC),
        (RUNGE, i02_0, _DEC),
        (RUNGE, i02_i, _DEC),
        (abs_shift(-1.0), i11_l, _INC),
    )


def mean_convex_cases() -> tuple[tuple[RealFn, Interval], ...]:
    """Convex battery members (affine ones exercise the weak case)."""
    i02_0 = Interval(0.0, 2.0, 0.0)
    i02_i = Interval(0.0, 2.0, 0.5)
    i11_0 = Interval(-1.0, 1.0, 0.0)
    return (
        (ONE, i02_0),
        (IDENT, i02_0),
        (IDENT, i11_0),
        (SQUARE, i02_0),
        (SQUARE, i11_0),
        (EXP, i02_i),
        (EXP, i11_0),
        (abs_shift(0.0), i11_0),
        (abs_shift(0.5), i02_i),
    )
