"""Ball-integral reduction, gamma constants, and the Monte Carlo oracle."""
import math

import pytest

from monofrac import battery
from monofrac.monotone import Verdict
from monofrac.radial import (
    RadialCase,
    _uniforms,
    ball_constant,
    half_gamma,
    monte_carlo_ball,
    radial_integral,
    verify_radial_monotone,
)


class TestGammaConstants:
    def test_half_integers_exact(self):
        assert half_gamma(1) == math.sqrt(math.pi)
        assert half_gamma(2) == 1.0
        assert half_gamma(3) == math.sqrt(math.pi) / 2.0
        assert half_gamma(4) == 1.0
        assert half_gamma(5) == pytest.approx(0.75 * math.sqrt(math.pi), rel=1e-15)
        assert half_gamma(6) == 2.0

    def test_ball_constants(self):
        assert ball_constant(1) == pytest.approx(2.0, rel=1e-15)
        assert ball_constant(2) == pytest.approx(2.0 * math.pi, rel=1e-15)
        assert ball_constant(3) == pytest.approx(4.0 * math.pi, rel=1e-15)

    def test_dim_capped(self):
        with pytest.raises(ValueError):
            ball_constant(7)


class TestRadialIntegral:
    def test_disk_area(self):
        case = RadialCase(2, battery.ONE, battery.ONE, 1.0)
        assert radial_integral(case, 1.0) == pytest.approx(math.pi, abs=1e-10)

    def test_ball_volume(self):
        case = RadialCase(3, battery.ONE, battery.ONE, 1.0)
        assert radial_integral(case, 1.0) == pytest.approx(4.0 * math.pi / 3.0, abs=1e-10)

    def test_linear_profile(self):
        case = RadialCase(2, battery.IDENT, battery.ONE, 1.0)
        assert radial_integral(case, 1.0) == pytest.approx(math.pi / 3.0, abs=1e-10)

    def test_radius_bounds(self):
        case = RadialCase(2, battery.ONE, battery.ONE, 1.0)
        with pytest.raises(ValueError):
            radial_integral(case, 1.5)
        with pytest.raises(ValueError):
            radial_integral(case, 0.0)


class TestMonteCarlo:
    def test_disk_area_within_three_se(self):
        case = RadialCase(2, battery.ONE, battery.ONE, 1.0)
        est, se = monte_carlo_ball(case, 1.0, 100_000, seed=42)
        assert abs(est - math.pi) <= 3.0 * se

    def test_ball_volume_within_three_se(self):
        case = RadialCase(3, battery.ONE, battery.ONE, 1.0)
        est, se = monte_carlo_ball(case, 1.0, 100_000, seed=42)
        assert abs(est - 4.0 * math.pi / 3.0) <= 3.0 * se

    def test_profile_matches_reduction(self):
        case = RadialCase(2, battery.EXP_DECAY, battery.ONE, 1.0)
        exact = radial_integral(case, 1.0)
        assert exact == pytest.approx(2.3114546995818434, abs=1e-9)
        est, se = monte_carlo_ball(case, 1.0, 100_000, seed=7)
        assert abs(est - exact) <= 3.0 * se

    def test_deterministic_for_seed(self):
        case = RadialCase(2, battery.IDENT, battery.ONE, 1.0)
        a = monte_carlo_ball(case, 1.0, 50_000, seed=7)
        b = monte_carlo_ball(case, 1.0, 50_000, seed=7)
        assert a == b
        c = monte_carlo_ball(case, 1.0, 50_000, seed=8)
        assert a != c

    def test_stream_is_batch_independent(self):
        import numpy as np

        whole = _uniforms(123, 0, 10)
        parts = np.concatenate([_uniforms(123, 0, 4), _uniforms(123, 4, 6)])
        assert np.array_equal(whole, parts)

    def test_minimum_samples(self):
        case = RadialCase(2, battery.ONE, battery.ONE, 1.0)
        with pytest.raises(ValueError):
            monte_carlo_ball(case, 1.0, 5000, seed=1)

    def test_dimension_cap(self):
        case = RadialCase(4, battery.ONE, battery.ONE, 1.0)
        with pytest.raises(ValueError):
            monte_carlo_ball(case, 1.0, 10_000, seed=1)


class TestRadialMonotone:
    def test_linear_over_one(self):
        case = RadialCase(2, battery.IDENT, battery.ONE, 1.5)
        hyp, concl = verify_radial_monotone(case)
        assert hyp.verdict is Verdict.STRICTLY_INCREASING
        assert concl.verdict is Verdict.STRICTLY_INCREASING

    def test_equal_profiles(self):
        case = RadialCase(2, battery.EXP, battery.EXP, 1.5)
        hyp, concl = verify_radial_monotone(case)
        assert hyp.verdict is Verdict.NONDECREASING
        assert concl.verdict is Verdict.NONDECREASING

    def test_flipped_profile(self):
        case = RadialCase(3, battery.NEG_IDENT, battery.ONE, 1.5)
        hyp, concl = verify_radial_monotone(case)
        assert hyp.verdict is Verdict.STRICTLY_DECREASING
        assert concl.verdict is Verdict.STRICTLY_DECREASING
