"""Verification suites: each one runs a battery of cases and returns
machine-readable records plus the sampled curves behind them.

Case records and curves are plain value objects; scheduling order never
affects their content, so runs are reproducible byte for byte.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import battery
from .calculus import (
    AntiderivSpec,
    QuadConfig,
    antideriv_cauchy,
    antideriv_repeated,
    antideriv_semigroup_check,
    mean,
    remainder_integral_check,
)
from .funcs import Interval, make_grid
from .monotone import (
    TAU_STRICT_SCALE,
    TAU_ZERO_SCALE,
    Verdict,
    inherits,
    monotonicity_of,
    verify_gromov,
    verify_lhopital,
    verify_mean_convex,
    verify_mean_monotone,
    zero_set_check_A,
    zero_set_check_R,
)
from .radial import RadialCase, monte_carlo_ball, radial_integral, verify_radial_monotone
from .sir import (
    SirParams,
    chord_slope_samples,
    lambert_w0,
    sir_apriori_check,
    sir_final_size,
    sir_integrate,
    sir_mean_apriori_check,
)

ORACLE_ABS = 1e-7
ORACLE_REL = 1e-6

# Punctured integrands force the open midpoint rule (second order), so the
# zero-set suite runs its quadrature at a matching, cheaper tolerance; the
# zero thresholds themselves sit at the same 1e-8 scale.
ZERO_SET_QUAD = QuadConfig(abs_tol=1e-8, rel_tol=1e-8)

SIR_BATTERY = tuple(
    (r0, s0, i0)
    for r0 in (1.5, 2.0, 4.0)
    for s0 in (0.9, 0.99)
    for i0 in (0.01, 0.1)
    if s0 + i0 <= 1.0
)
SIR_CANONICAL = (2.0, 0.99, 0.01)


def oracle_tol(value: float) -> float:
    return max(ORACLE_ABS, ORACLE_REL * abs(value))


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case_id: str
    passed: bool
    max_violation: float = 0.0
    verdicts: dict = field(default_factory=dict)
    wall_time: float = 0.0


@dataclass(frozen=True)
class Curve:
    """One sampled curve set: a shared abscissa column plus named value
    columns, destined for one CSV file (and one figure)."""

    name: str
    x_label: str
    x: tuple[float, ...]
    columns: tuple[tuple[str, tuple[float, ...]], ...]


@dataclass(frozen=True)
class SuiteContext:
    cfg: QuadConfig
    grid_size: int = 17
    seed: int = 20240901
    mc_samples: int = 200_000
    tau_strict: float = TAU_STRICT_SCALE
    tau_zero: float = TAU_ZERO_SCALE
    sir_cases: tuple[tuple[float, float, float], ...] = ()


def _iv_tag(iv: Interval) -> str:
    return f"iv{iv.lo:g}_{iv.hi:g}_c{iv.c:g}"


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def run_calculus_oracles(ctx: SuiteContext) -> tuple[list[CaseResult], list[Curve]]:
    """Cross-oracles for the weighted-integral constructions: nested vs
    single-integral antiderivatives, the nesting identity, the remainder
    integral form, and mean consistency."""
    records: list[CaseResult] = []
    curves: list[Curve] = []
    ivs = (Interval(0.0, 2.0, 0.0), Interval(-1.0, 1.0, 0.0))

    for iv in ivs:
        grid = make_grid(iv, ctx.grid_size, exclude_base=True)
        for f in battery.full_battery(iv.c):
            for n in (2, 3):
                spec = AntiderivSpec(n, f, iv.c, iv)

                def case(spec=spec, grid=grid):
                    xs, direct, nested = [], [], []
                    worst = 0.0
                    for x in grid.points:
                        a = antideriv_cauchy(spec, x, ctx.cfg)
                        b = antideriv_repeated(spec, x, ctx.cfg)
                        xs.append(x)
                        direct.append(a)
                        nested.append(b)
                        worst = max(worst, abs(a - b) - oracle_tol(a))
                    return xs, direct, nested, worst

                (xs, direct, nested, worst), dt = _timed(case)
                cid = f"oracle_{f.name}_n{n}_{_iv_tag(iv)}"
                records.append(
                    CaseResult(
                        "calculus_oracles",
                        cid,
                        worst <= 0.0,
                        max(worst, 0.0),
                        {"check": "cauchy_vs_repeated"},
                        dt,
                    )
                )
                curves.append(
                    Curve(
                        cid,
                        "x",
                        tuple(xs),
                        (("a_cauchy", tuple(direct)), ("a_repeated", tuple(nested))),
                    )
                )

    for iv in ivs:
        probe = [iv.c + 0.35 * iv.width, iv.hi, iv.lo + 0.1 * iv.width]
        probe = sorted({x for x in probe if abs(x - iv.c) > iv.base_gap})
        for f in battery.full_battery(iv.c):
            for n in (2, 3):
                spec = AntiderivSpec(n, f, iv.c, iv)

                def case(spec=spec, n=n):
                    worst = 0.0
                    for k in range(1, n):
                        for x in probe:
                            a, b = antideriv_semigroup_check(spec, k, x, ctx.cfg)
                            worst = max(worst, abs(a - b) - oracle_tol(a))
                    return worst

                worst, dt = _timed(case)
                cid = f"semigroup_{f.name}_n{n}_{_iv_tag(iv)}"
                records.append(
                    CaseResult(
                        "calculus_oracles",
                        cid,
                        worst <= 0.0,
                        max(worst, 0.0),
                        {"check": "nesting_identity"},
                        dt,
                    )
                )

    for iv in ivs:
        grid = make_grid(iv, ctx.grid_size, exclude_base=True)
        for f in battery.smooth_battery():
            for n in (1, 2, 3):

                def case(f=f, n=n, grid=grid, iv=iv):
                    worst = 0.0
                    for x in grid.points:
                        lhs, rhs = remainder_integral_check(n, f, iv.c, x, ctx.cfg)
                        worst = max(worst, abs(lhs - rhs) - oracle_tol(lhs))
                    return worst

                worst, dt = _timed(case)
                cid = f"remainder_{f.name}_n{n}_{_iv_tag(iv)}"
                records.append(
                    CaseResult(
                        "calculus_oracles",
                        cid,
                        worst <= 0.0,
                        max(worst, 0.0),
                        {"check": "remainder_integral_form"},
                        dt,
                    )
                )

    for iv in ivs:
        grid = make_grid(iv, ctx.grid_size, exclude_base=True)
        for f in battery.full_battery(iv.c):
            for n in (1, 2, 3):

                def case(f=f, n=n, grid=grid, iv=iv):
                    one_spec = AntiderivSpec(n, battery.ONE, iv.c, iv)
                    f_spec = AntiderivSpec(n, f, iv.c, iv)
                    worst = 0.0
                    for x in grid.points:
                        m = mean(n, f, iv.c, x, ctx.cfg)
                        ratio = antideriv_cauchy(f_spec, x, ctx.cfg) / antideriv_cauchy(
                            one_spec, x, ctx.cfg
                        )
                        worst = max(worst, abs(m - ratio) - 1e-9 * (1.0 + abs(m)))
                    return worst

                worst, dt = _timed(case)
                cid = f"mean_ratio_{f.name}_n{n}_{_iv_tag(iv)}"
                records.append(
                    CaseResult(
                        "calculus_oracles",
                        cid,
                        worst <= 0.0,
                        max(worst, 0.0),
                        {"check": "mean_equals_antideriv_ratio"},
                        dt,
                    )
                )

    return records, curves


def _fraction_rule_suite(name, cases, verifier, ctx):
    records: list[CaseResult] = []
    curves: list[Curve] = []
    for case in cases:

        def run(case=case):
            hyp, concl = verifier(case, ctx.cfg, ctx.grid_size, tau_scale=ctx.tau_strict)
            ok = hyp.verdict is case.expected and inherits(hyp.verdict, concl.verdict)
            worst = 0.0
            if concl.verdict is not hyp.verdict:
                for x1, x2, v1, v2 in concl.violations:
                    worst = max(worst, abs(v2 - v1))
            return hyp, concl, ok, worst

        (hyp, concl, ok, worst), dt = _timed(run)
        cid = case.label()
        records.append(
            CaseResult(
                name,
                cid,
                ok,
                worst,
                {
                    "expected": case.expected.value,
                    "hypothesis": hyp.verdict.value,
                    "conclusion": concl.verdict.value,
                },
                dt,
            )
        )
        xs = tuple(x for x, _ in concl.samples)
        hyp_on_xs = tuple(case.f.eval(x) / case.g.eval(x) for x in xs) if name == "gromov" else tuple(
            case.f.derivs[case.n - 1](x) / case.g.derivs[case.n - 1](x) for x in xs
        )
        curves.append(
            Curve(
                f"{name}_{cid}",
                "x",
                xs,
                (
                    ("ratio_hyp", hyp_on_xs),
                    ("ratio_concl", tuple(v for _, v in concl.samples)),
                ),
            )
        )
    return records, curves


def run_gromov(ctx: SuiteContext) -> tuple[list[CaseResult], list[Curve]]:
    """Integral fraction rule over the battery."""
    return _fraction_rule_suite("gromov", battery.gromov_cases(), verify_gromov, ctx)


def run_lhopital(ctx: SuiteContext) -> tuple[list[CaseResult], list[Curve]]:
    """Derivative fraction rule over the battery."""
    return _fraction_rule_suite("lhopital", battery.lhopital_cases(), verify_lhopital, ctx)


def run_zero_sets(ctx: SuiteContext) -> tuple[list[CaseResult], list[Curve]]:
    """Zero-set checks for antiderivatives and remainder derivatives."""
    records: list[CaseResult] = []
    curves: list[Curve] = []
    for f, n, iv in battery.zero_set_A_cases():
        grid = make_grid(iv, max(9, ctx.grid_size // 2), exclude_base=True)
        spec = AntiderivSpec(n, f, iv.c, iv)
        (ok,), dt = _timed(lambda spec=spec, grid=grid: (
            zero_set_check_A(spec, grid, ZERO_SET_QUAD, tau_scale=ctx.tau_zero),
        ))
        cid = f"zeroA_{f.name}_n{n}_{_iv_tag(iv)}"
        records.append(CaseResult("zero_sets", cid, ok, 0.0, {"check": "antideriv"}, dt))
        curves.append(
            Curve(
                cid,
                "x",
                grid.points,
                (
                    (
                        "antideriv",
                        tuple(antideriv_cauchy(spec, x, ZERO_SET_QUAD) for x in grid.points),
                    ),
                ),
            )
        )
    for f, n, c, iv in battery.zero_set_R_cases():
        grid = make_grid(iv, max(9, ctx.grid_size // 2), exclude_base=True)
        (ok,), dt = _timed(lambda f=f, n=n, c=c, iv=iv, grid=grid: (
            zero_set_check_R(n, f, c, iv, grid, tau_scale=ctx.tau_zero),
        ))
        cid = f"zeroR_{f.name}_n{n}_c{c:g}_{_iv_tag(iv)}"
        records.append(CaseResult("zero_sets", cid, ok, 0.0, {"check": "remainder"}, dt))
    return records, curves


def run_mean_corollaries(ctx: SuiteContext) -> tuple[list[CaseResult], list[Curve]]:
    """Monotonicity and discrete convexity of the order-n mean."""
    records: list[CaseResult] = []
    curves: list[Curve] = []
    for f, iv, expected in battery.mean_monotone_cases():
        for n in (1, 2, 3):

            def run(f=f, iv=iv, n=n):
                rep = verify_mean_monotone(
                    n, f, iv.c, iv, ctx.cfg, ctx.grid_size, tau_scale=ctx.tau_strict
                )
                return rep, inherits(expected, rep.verdict)

            (rep, ok), dt = _timed(run)
            cid = f"mean_mono_{f.name}_n{n}_{_iv_tag(iv)}"
            records.append(
                CaseResult(
                    "mean_corollaries",
                    cid,
                    ok,
                    0.0,
                    {"expected": expected.value, "verdict": rep.verdict.value},
                    dt,
                )
            )
            curves.append(
                Curve(
                    cid,
                    "x",
                    tuple(x for x, _ in rep.samples),
                    (("mean", tuple(v for _, v in rep.samples)),),
                )
            )
    for f, iv in battery.mean_convex_cases():
        for n in (1, 2, 3):
            (ok,), dt = _timed(lambda f=f, iv=iv, n=n: (
                verify_mean_convex(n, f, iv.c, iv, ctx.cfg, ctx.grid_size, tau_scale=ctx.tau_strict),
            ))
            cid = f"mean_convex_{f.name}_n{n}_{_iv_tag(iv)}"
            records.append(
                CaseResult("mean_corollaries", cid, ok, 0.0, {"check": "convexity"}, dt)
            )
    return records, curves


def run_sir(ctx: SuiteContext) -> tuple[list[CaseResult], list[Curve]]:
    """Outbreak battery: conservation drift, Lambert final size, residuals,
    and the chord / mean a-priori bounds."""
    records: list[CaseResult] = []
    curves: list[Curve] = []

    for r0, s0, i0 in SIR_BATTERY + tuple(ctx.sir_cases):
        p = SirParams(r0=r0, s0=s0, i0=i0)

        def run(p=p):
            traj = sir_integrate(p)
            c0 = p.conserved(p.s0, p.i0)
            drift = max(abs(p.conserved(st.s, st.i) - c0) for st in traj)
            formula, ode = sir_final_size(p)
            return traj, drift, abs(formula - ode)

        (traj, drift, gap), dt = _timed(run)
        ok = drift <= 1e-8 and gap <= 1e-5
        cid = f"sir_r0_{r0:g}_s0_{s0:g}_i0_{i0:g}"
        records.append(
            CaseResult(
                "sir",
                cid,
                ok,
                max(drift - 1e-8, gap - 1e-5, 0.0),
                {"drift": f"{drift:.3e}", "final_size_gap": f"{gap:.3e}"},
                dt,
            )
        )
        if (r0, s0, i0) == SIR_CANONICAL:
            c0 = p.conserved(p.s0, p.i0)
            stride = 20
            sub = traj[::stride]
            curves.append(
                Curve(
                    cid,
                    "t",
                    tuple(st.t for st in sub),
                    (
                        ("S", tuple(st.s for st in sub)),
                        ("I", tuple(st.i for st in sub)),
                        ("R", tuple(st.r for st in sub)),
                        (
                            "invariant_drift",
                            tuple(p.conserved(st.s, st.i) - c0 for st in sub),
                        ),
                    ),
                )
            )

    def lambert_case():
        worst = 0.0
        for x in np.linspace(-math.exp(-1.0), 0.0, 100):
            w = lambert_w0(float(x))
            worst = max(worst, abs(w * math.exp(w) - x) - 1e-14 * (1.0 + abs(x)))
        return worst

    worst, dt = _timed(lambert_case)
    records.append(
        CaseResult(
            "sir", "lambert_residual", worst <= 0.0, max(worst, 0.0), {"points": "100"}, dt
        )
    )

    p = SirParams(*SIR_CANONICAL)

    def apriori_case():
        ok0 = sir_apriori_check(p, 0, strict=True, tau_scale=ctx.tau_strict)
        traj = sir_integrate(p)
        chord_ok = True
        n_steps = len(traj)
        for c_index in (0, n_steps // 8, n_steps // 4, n_steps // 2, 3 * n_steps // 4):
            samples = chord_slope_samples(traj, c_index, i_floor=1e-5, stride=10)
            rep = monotonicity_of(samples, ctx.tau_strict)
            chord_ok = chord_ok and rep.verdict.value == "strictly_increasing"
        return ok0 and chord_ok

    (ok,), dt = _timed(lambda: (apriori_case(),))
    records.append(CaseResult("sir", "apriori_chord", ok, 0.0, {"c": "5-point set"}, dt))

    def mean_apriori_case():
        ok = sir_mean_apriori_check(p, 1, 0, ctx.cfg, tau_scale=ctx.tau_strict)
        ok = ok and sir_mean_apriori_check(p, 2, 0, ctx.cfg, tau_scale=ctx.tau_strict)
        degenerate = SirParams(r0=2.0, s0=0.4, i0=1e-12)
        return ok and sir_mean_apriori_check(degenerate, 1, 0, ctx.cfg, tau_scale=ctx.tau_strict)

    (ok,), dt = _timed(lambda: (mean_apriori_case(),))
    records.append(CaseResult("sir", "mean_apriori", ok, 0.0, {"orders": "1,2"}, dt))

    return records, curves


def run_radial(ctx: SuiteContext) -> tuple[list[CaseResult], list[Curve]]:
    """Ball-integral reduction: exact constants, Monte Carlo agreement, and
    ratio monotonicity matching the one-dimensional verdicts."""
    records: list[CaseResult] = []
    curves: list[Curve] = []

    for dim, want, label in ((2, math.pi, "disk_area"), (3, 4.0 * math.pi / 3.0, "ball_volume")):
        case = RadialCase(dim=dim, f=battery.ONE, g=battery.ONE, r_max=1.0)
        (got,), dt = _timed(lambda case=case: (radial_integral(case, 1.0, ctx.cfg),))
        err = abs(got - want)
        records.append(
            CaseResult(
                "radial",
                f"constant_{label}",
                err <= 1e-9,
                max(err - 1e-9, 0.0),
                {"value": f"{got:.12f}"},
                dt,
            )
        )

    mc_profiles = (
        (1, battery.ONE),
        (2, battery.ONE),
        (3, battery.ONE),
        (2, battery.IDENT),
        (2, battery.EXP_DECAY),
        (3, battery.IDENT),
    )
    for dim, f in mc_profiles:
        case = RadialCase(dim=dim, f=f, g=battery.ONE, r_max=1.0)

        def run(case=case):
            exact = radial_integral(case, 1.0, ctx.cfg)
            est, se = monte_carlo_ball(case, 1.0, ctx.mc_samples, ctx.seed)
            return exact, est, se

        (exact, est, se), dt = _timed(run)
        err = abs(exact - est)
        # A zero-variance profile (dim 1, constant f) has se = 0 and an
        # exact estimator; the floor absorbs quadrature dust.
        bound = 3.0 * se + 1e-12
        records.append(
            CaseResult(
                "radial",
                f"mc_{f.name}_dim{dim}",
                err <= bound,
                max(err - bound, 0.0),
                {"exact": f"{exact:.8f}", "mc": f"{est:.8f}", "se": f"{se:.2e}"},
                dt,
            )
        )

    ratio_cases = (
        (RadialCase(1, battery.IDENT, battery.ONE, 1.5), Verdict.STRICTLY_INCREASING),
        (RadialCase(2, battery.IDENT, battery.ONE, 1.5), Verdict.STRICTLY_INCREASING),
        (RadialCase(3, battery.IDENT, battery.ONE, 1.5), Verdict.STRICTLY_INCREASING),
        (RadialCase(3, battery.NEG_IDENT, battery.ONE, 1.5), Verdict.STRICTLY_DECREASING),
        (RadialCase(2, battery.EXP, battery.EXP, 1.5), Verdict.NONDECREASING),
        (RadialCase(2, battery.EXP_DECAY, battery.ONE, 1.5), Verdict.STRICTLY_DECREASING),
    )
    for case, expected in ratio_cases:

        def run(case=case):
            hyp, concl = verify_radial_monotone(
                case, ctx.cfg, grid_size=ctx.grid_size, tau_scale=ctx.tau_strict
            )
            return hyp, concl, hyp.verdict is expected and inherits(hyp.verdict, concl.verdict)

        (hyp, concl, ok), dt = _timed(run)
        cid = f"ratio_{case.label()}"
        records.append(
            CaseResult(
                "radial",
                cid,
                ok,
                0.0,
                {"hypothesis": hyp.verdict.value, "conclusion": concl.verdict.value},
                dt,
            )
        )
        curves.append(
            Curve(
                cid,
                "r",
                tuple(x for x, _ in concl.samples),
                (("ball_ratio", tuple(v for _, v in concl.samples)),),
            )
        )

    return records, curves


SUITES = {
    "calculus_oracles": run_calculus_oracles,
    "gromov": run_gromov,
    "lhopital": run_lhopital,
    "zero_sets": run_zero_sets,
    "mean_corollaries": run_mean_corollaries,
    "sir": run_sir,
    "radial": run_radial,
}
