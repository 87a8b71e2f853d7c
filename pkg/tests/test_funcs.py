"""Intervals, grids, finite differences, and derivative-stack validation."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import monofrac.funcs
from monofrac import battery
from monofrac.errors import DomainError, EmptyGridError, InsufficientDerivativesError
from monofrac.funcs import (
    Grid,
    Interval,
    RealFn,
    finite_diff,
    make_grid,
    spot_check_derivatives,
)


class TestInterval:
    def test_valid(self):
        iv = Interval(0.0, 2.0, 0.5)
        assert iv.width == 2.0
        assert iv.contains(1.7)
        assert not iv.contains(2.1)

    @pytest.mark.parametrize("lo,hi,c", [(1.0, 1.0, 1.0), (2.0, 1.0, 1.5), (0.0, 1.0, 2.0)])
    def test_bad_shape(self, lo, hi, c):
        with pytest.raises(DomainError):
            Interval(lo, hi, c)

    @pytest.mark.parametrize(
        "lo,hi,c",
        [(-math.inf, 1.0, 0.0), (0.0, math.inf, 1.0), (0.0, 1.0, math.nan)],
    )
    def test_infinite_endpoints_rejected(self, lo, hi, c):
        with pytest.raises(DomainError):
            Interval(lo, hi, c)


class TestMakeGrid:
    def test_uniform(self):
        g = make_grid(Interval(0.0, 1.0, 0.0), 3)
        assert g.points == (0.0, 0.5, 1.0)

    def test_base_dropped_at_endpoint(self):
        g = make_grid(Interval(0.0, 1.0, 0.0), 3, exclude_base=True)
        assert g.points == (0.5, 1.0)
        assert g.excludes_base

    def test_base_dropped_interior(self):
        g = make_grid(Interval(-1.0, 1.0, 0.0), 5, exclude_base=True)
        assert g.points == (-1.0, -0.5, 0.5, 1.0)

    def test_count_too_small(self):
        with pytest.raises(ValueError):
            make_grid(Interval(0.0, 1.0, 0.0), 1)

    def test_empty_grid_error(self, monkeypatch):
        # The production gap never swallows a uniform grid; widen it to
        # exercise the error path.
        monkeypatch.setattr(monofrac.funcs, "BASE_GAP_SCALE", 10.0)
        with pytest.raises(EmptyGridError):
            make_grid(Interval(0.0, 1.0, 0.5), 5, exclude_base=True)

    def test_strictly_increasing_validated(self):
        with pytest.raises(ValueError):
            Grid(points=(0.0, 0.0, 1.0))

    @given(
        lo=st.floats(-100.0, 100.0),
        width=st.floats(1e-3, 100.0),
        frac=st.floats(0.0, 1.0),
        count=st.integers(2, 64),
        exclude=st.booleans(),
    )
    @settings(max_examples=200)
    def test_contained_and_increasing(self, lo, width, frac, count, exclude):
        iv = Interval(lo, lo + width, lo + frac * width)
        g = make_grid(iv, count, exclude_base=exclude)
        assert all(iv.lo <= p <= iv.hi for p in g.points)
        assert all(b > a for a, b in zip(g.points, g.points[1:]))
        if exclude:
            assert all(abs(p - iv.c) >= iv.base_gap for p in g.points)


class TestFiniteDiff:
    def test_square_first(self):
        f = RealFn(lambda x: x * x)
        assert finite_diff(f, 1, 1.0, 1e-5) == pytest.approx(2.0, abs=1e-8)

    def test_exp_second(self):
        assert finite_diff(battery.EXP, 2, 0.0, 1e-4) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("x", [0.0, 0.3, 0.7, 1.0])
    def test_identity_second_vanishes(self, x):
        assert abs(finite_diff(battery.IDENT, 2, x, 1e-4)) <= 1e-8

    def test_zeroth_order(self):
        assert finite_diff(battery.EXP, 0, 1.0, 1e-4) == math.exp(1.0)

    def test_higher_orders(self):
        assert finite_diff(battery.EXP, 3, 0.0, 1e-3) == pytest.approx(1.0, abs=1e-5)
        assert finite_diff(battery.EXP, 4, 0.0, 1e-2) == pytest.approx(1.0, abs=1e-4)

    def test_order_capped(self):
        with pytest.raises(ValueError):
            finite_diff(battery.EXP, 5, 0.0, 1e-3)

    def test_stencil_leaves_interval(self):
        iv = Interval(0.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            finite_diff(battery.EXP, 2, 0.0, 1e-3, iv=iv)
        assert finite_diff(battery.EXP, 2, 0.5, 1e-3, iv=iv) == pytest.approx(
            math.exp(0.5), abs=1e-6
        )


class TestDerivativeStacks:
    @pytest.mark.parametrize("f", battery.smooth_battery(), ids=lambda f: f.name)
    @pytest.mark.parametrize("iv", battery.battery_intervals(), ids=str)
    def test_battery_stacks_validated(self, f, iv):
        # Ten random interior points per order, as the stack contract demands.
        spot_check_derivatives(f, iv, orders=(1, 2), points=10, seed=7)

    def test_misdeclared_stack_caught(self):
        liar = RealFn(lambda x: x * x, derivs=(lambda x: 3.0 * x,), name="liar")
        with pytest.raises(ValueError, match="disagrees"):
            spot_check_derivatives(liar, Interval(0.0, 2.0, 0.0), orders=(1,))

    def test_deriv_accessor(self):
        assert battery.SQUARE.deriv(1)(3.0) == 6.0
        assert battery.SQUARE.deriv(0)(3.0) == 9.0
        with pytest.raises(InsufficientDerivativesError):
            battery.abs_shift(0.0).deriv(1)
