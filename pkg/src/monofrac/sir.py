"""Single-outbreak SIR machinery: fixed-step integration, the conserved
quantity, the Lambert-W closed form for the final size, and the chord and
mean a-priori estimates it supports.

Time integration is inherently sequential; every post-hoc check on a
trajectory is pure and may run in parallel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .calculus import DEFAULT_QUAD, QuadConfig, mean
from .errors import ConvergenceError, DomainError, StepInstabilityError
from .funcs import RealFn
from .monotone import TAU_STRICT_SCALE

_BRANCH_POINT = -math.exp(-1.0)
_BOUNDS_SLACK = 1e-9


@dataclass(frozen=True)
class SirParams:
    """Nondimensional outbreak parameters (population fractions).

    The basic reproduction number must exceed 1; initial susceptible and
    infected fractions are strictly inside (0, 1).
    """

    r0: float
    s0: float
    i0: float
    rec0: float = 0.0
    dt: float = 0.01
    t_end: float = 200.0

    def __post_init__(self) -> None:
        if not self.r0 > 1.0:
            raise ValueError("basic reproduction number must exceed 1")
        if not 0.0 < self.s0 < 1.0:
            raise ValueError("s0 must lie in (0, 1)")
        if not 0.0 < self.i0 < 1.0:
            raise ValueError("i0 must lie in (0, 1)")
        if not 0.0 <= self.rec0 < 1.0:
            raise ValueError("rec0 must lie in [0, 1)")
        if self.s0 + self.i0 + self.rec0 > 1.0 + 1e-12:
            raise ValueError("initial fractions must not exceed 1")
        if self.dt <= 0.0 or self.t_end <= 0.0:
            raise ValueError("dt and t_end must be positive")

    def conserved(self, s: float, i: float) -> float:
        """I + S - ln(S)/R0, constant along exact trajectories."""
        return i + s - math.log(s) / self.r0


@dataclass(frozen=True)
class SirState:
    t: float
    s: float
    i: float
    r: float


def sir_integrate(p: SirParams) -> list[SirState]:
    """Classical fixed-step 4th-order trajectory from t = 0 to t_end.

    Raises :class:`StepInstabilityError` if any state leaves the unit cube
    by more than 1e-9.
    """
    r0 = p.r0
    dt = p.dt
    steps = round(p.t_end / p.dt)

    def rhs(s: float, i: float) -> tuple[float, float, float]:
        flow = r0 * s * i
        return -flow, flow - i, i

    s, i, r = p.s0, p.i0, p.rec0
    states = [SirState(0.0, s, i, r)]
    for k in range(steps):
        k1 = rhs(s, i)
        k2 = rhs(s + 0.5 * dt * k1[0], i + 0.5 * dt * k1[1])
        k3 = rhs(s + 0.5 * dt * k2[0], i + 0.5 * dt * k2[1])
        k4 = rhs(s + dt * k3[0], i + dt * k3[1])
        s += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        i += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        r += dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        if not all(-_BOUNDS_SLACK <= v <= 1.0 + _BOUNDS_SLACK for v in (s, i, r)):
            raise StepInstabilityError(
                f"state left the unit cube at t = {(k + 1) * dt:g}: S={s}, I={i}, R={r}"
            )
        states.append(SirState((k + 1) * dt, s, i, r))
    return states


def lambert_w0(x: float) -> float:
    """Principal-branch Lambert W on [-1/e, 0]: the w in [-1, 0] solving
    w * exp(w) = x, to residual |w*exp(w) - x| <= 1e-14 * (1 + |x|).

    Bracketed bisection on [-1, 0], with Halley steps accepted only while
    they stay inside the bracket (the map is flat near the branch point, so
    pure Newton-type iteration is unsafe there).
    """
    if math.isnan(x) or x > 0.0 or x < _BRANCH_POINT - 1e-12:
        raise DomainError(f"lambert_w0 needs x in [-1/e, 0], got {x}")
    if x == 0.0:
        return 0.0
    x = max(x, _BRANCH_POINT)
    tol = 1e-14 * (1.0 + abs(x))
    lo, hi = -1.0, 0.0  # w * exp(w) is increasing here, so the bracket is trivial
    w = 0.5 * (lo + hi)
    for _ in range(200):
        ew = math.exp(w)
        res = w * ew - x
        if abs(res) <= tol:
            return w
        if res > 0.0:
            hi = w
        else:
            lo = w
        stepped = False
        wp1 = w + 1.0
        if wp1 != 0.0:
            den = ew * wp1 - (w + 2.0) * res / (2.0 * wp1)
            if math.isfinite(den) and den != 0.0:
                cand = w - res / den
                if lo < cand < hi:
                    w = cand
                    stepped = True
        if not stepped:
            w = 0.5 * (lo + hi)
    raise ConvergenceError(f"lambert_w0 did not reach residual tolerance at x = {x}")


def sir_final_size(p: SirParams) -> tuple[float, float]:
    """(closed-form limiting susceptible fraction, long-time ODE value).

    The closed form is -W(-R0*S0*exp(-R0*(S0+I0)))/R0 and must land in
    (0, 1/R0); the second component is S at t_end from the integrated
    trajectory.
    """
    arg = -p.r0 * p.s0 * math.exp(-p.r0 * (p.s0 + p.i0))
    s_formula = -lambert_w0(arg) / p.r0
    if not 0.0 < s_formula < 1.0 / p.r0:
        raise ValueError(f"final size {s_formula} outside (0, 1/{p.r0})")
    traj = sir_integrate(p)
    return s_formula, traj[-1].s


def apriori_margins(traj: Sequence[SirState], r0: float, c_index: int) -> np.ndarray:
    """Margins rhs - I(t) of the chord bound anchored at sample c_index,
    over all other samples (positive means the bound holds)."""
    ss = np.array([st.s for st in traj])
    ii = np.array([st.i for st in traj])
    sc = ss[c_index]
    ic = ii[c_index]
    slope = 1.0 / (r0 * sc) - 1.0
    margins = ic + slope * (ss - sc) - ii
    return np.delete(margins, c_index)


def sir_apriori_check(
    p: SirParams,
    c_index: int,
    strict: bool = True,
    tau_scale: float = TAU_STRICT_SCALE,
) -> bool:
    """Chord bound along the computed orbit: I(t) stays below the line
    through (S(c), I(c)) with slope 1/(R0*S(c)) - 1 at every other sample.

    With ``strict`` the margin must clear the strictness threshold;
    otherwise ties within the threshold are accepted (near-degenerate
    orbits have both sides almost equal).
    """
    traj = sir_integrate(p)
    margins = apriori_margins(traj, p.r0, c_index)
    scale = max(abs(st.i) for st in traj)
    tau = tau_scale * (1.0 + scale)
    if strict:
        return bool(np.all(margins > tau))
    return bool(np.all(margins > -tau))


def chord_slope_samples(
    traj: Sequence[SirState],
    c_index: int,
    i_floor: float = 0.0,
    stride: int = 1,
) -> list[tuple[float, float]]:
    """(t, chord slope) sequence (I(t)-I(c))/(S(t)-S(c)) along the orbit.

    ``i_floor`` drops the flat tail where I has decayed below resolution
    (the exact slopes still increase there, but by less than any sampling
    margin); ``stride`` thins the samples.
    """
    sc = traj[c_index].s
    ic = traj[c_index].i
    out = []
    for k in range(0, len(traj), stride):
        if k == c_index:
            continue
        st = traj[k]
        if st.i < i_floor:
            continue
        out.append((st.t, (st.i - ic) / (st.s - sc)))
    return out


def trajectory_fn(ts: np.ndarray, ys: np.ndarray, name: str = "") -> RealFn:
    """Shape-preserving (monotone cubic) interpolant of trajectory samples,
    wrapped for the quadrature engine.  Monotone data stays monotone and
    unimodal data overshoots nowhere, so the bridge cannot manufacture
    spurious monotonicity violations."""
    interp = PchipInterpolator(np.asarray(ts), np.asarray(ys), extrapolate=False)
    return RealFn(lambda t: float(interp(t)), name=name)


def default_mean_check_times(p: SirParams) -> tuple[float, ...]:
    """Dyadic spread of check times over (0, t_end]."""
    times = []
    t = p.t_end
    while t > max(4.0 * p.dt, p.t_end / 1024.0):
        times.append(t)
        t /= 2.0
    return tuple(sorted(times))


def sir_mean_apriori_check(
    p: SirParams,
    n: int,
    c_index: int,
    cfg: QuadConfig = DEFAULT_QUAD,
    check_times: Sequence[float] | None = None,
    interp_stride: int = 10,
    tau_scale: float = TAU_STRICT_SCALE,
) -> bool:
    """Order-n mean version of the chord bound.

    S and I are bridged to integrable functions by monotone cubic
    interpolation of (thinned) trajectory samples, the order-n means are
    computed by quadrature, and the chord inequality anchored at sample
    c_index is evaluated at the check times.  Ties within the strictness
    margin are accepted, which covers near-degenerate orbits.
    """
    traj = sir_integrate(p)
    ts = np.array([st.t for st in traj])
    ss = np.array([st.s for st in traj])
    ii = np.array([st.i for st in traj])
    # Thin the interpolation knots but always keep the final sample, so the
    # interpolant covers all of [0, t_end].
    idx = np.arange(0, len(ts), max(1, interp_stride))
    if idx[-1] != len(ts) - 1:
        idx = np.append(idx, len(ts) - 1)
    s_fn = trajectory_fn(ts[idx], ss[idx], name="S")
    i_fn = trajectory_fn(ts[idx], ii[idx], name="I")
    tc = float(ts[c_index])
    sc = float(ss[c_index])
    ic = float(ii[c_index])
    slope = 1.0 / (p.r0 * sc) - 1.0
    if check_times is None:
        check_times = default_mean_check_times(p)
    margins = []
    scale = 0.0
    for t in check_times:
        if not 0.0 <= t <= p.t_end or abs(t - tc) < p.dt:
            continue
        mean_i = mean(n, i_fn, tc, t, cfg)
        mean_s = mean(n, s_fn, tc, t, cfg)
        rhs = ic + slope * (mean_s - sc)
        margins.append(rhs - mean_i)
        scale = max(scale, abs(mean_i), abs(rhs))
    if not margins:
        raise ValueError("no usable check times")
    tau = tau_scale * (1.0 + scale)
    return all(m > -tau for m in margins)
