"""Batch runner: load a suite configuration, execute the selected suites,
and write machine-readable reports, per-curve CSVs, and figures.

Exit codes: 0 all cases pass, 1 some case failed, 2 configuration error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .calculus import QuadConfig
from .errors import ConfigError
from .monotone import TAU_STRICT_SCALE, TAU_ZERO_SCALE
from .output import RunReport, emit_csv, render_figures, write_report_json
from .sir import SirParams
from .suites import SUITES, CaseResult, SuiteContext

_TOLERANCE_KEYS = {"abs_tol", "rel_tol", "max_depth", "min_intervals", "tau_strict", "tau_zero"}


@dataclass(frozen=True)
class SuiteConfig:
    """Validated run configuration (JSON file plus CLI overrides)."""

    suites: tuple[str, ...]
    grid_size: int = 17
    output_dir: str = "out"
    seed: int = 20240901
    tolerances: dict = field(default_factory=dict)
    mc_samples: int = 200_000
    figures: bool = True
    sir_cases: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self) -> None:
        if not self.suites:
            raise ConfigError("suites list must be nonempty")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {unknown}; known: {sorted(SUITES)}")
        if self.grid_size < 8:
            raise ConfigError("grid_size must be at least 8")
        if self.mc_samples < 10_000:
            raise ConfigError("mc_samples must be at least 1e4")
        bad = set(self.tolerances) - _TOLERANCE_KEYS
        if bad:
            raise ConfigError(f"unknown tolerance keys: {sorted(bad)}")
        for case in self.sir_cases:
            if len(case) != 3:
                raise ConfigError(f"sir_cases entries are [r0, s0, i0] triples, got {case}")
            try:
                SirParams(r0=case[0], s0=case[1], i0=case[2])
            except ValueError as exc:
                raise ConfigError(f"bad sir case {case}: {exc}") from exc

    def quad_config(self) -> QuadConfig:
        kwargs = {k: v for k, v in self.tolerances.items() if k in QuadConfig.__annotations__}
        try:
            return QuadConfig(**kwargs)
        except ValueError as exc:
            raise ConfigError(f"bad quadrature tolerances: {exc}") from exc

    def context(self) -> SuiteContext:
        return SuiteContext(
            cfg=self.quad_config(),
            grid_size=self.grid_size,
            seed=self.seed,
            mc_samples=self.mc_samples,
            tau_strict=self.tolerances.get("tau_strict", TAU_STRICT_SCALE),
            tau_zero=self.tolerances.get("tau_zero", TAU_ZERO_SCALE),
            sir_cases=self.sir_cases,
        )

    def echo(self) -> dict:
        return {
            "suites": list(self.suites),
            "grid_size": self.grid_size,
            "output_dir": self.output_dir,
            "seed": self.seed,
            "tolerances": dict(self.tolerances),
            "mc_samples": self.mc_samples,
            "figures": self.figures,
            "sir_cases": [list(c) for c in self.sir_cases],
        }


def load_config(path: str | Path) -> SuiteConfig:
    """Parse and validate a JSON suite configuration."""
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {p}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    known = {
        "suites",
        "grid_size",
        "output_dir",
        "seed",
        "tolerances",
        "mc_samples",
        "figures",
        "sir_cases",
    }
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        return SuiteConfig(
            suites=tuple(raw.get("suites", ())),
            grid_size=int(raw.get("grid_size", 17)),
            output_dir=str(raw.get("output_dir", "out")),
            seed=int(raw.get("seed", 20240901)),
            tolerances=dict(raw.get("tolerances", {})),
            mc_samples=int(raw.get("mc_samples", 200_000)),
            figures=bool(raw.get("figures", True)),
            sir_cases=tuple(tuple(float(v) for v in c) for c in raw.get("sir_cases", ())),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed config value: {exc}") from exc


def run(config: SuiteConfig) -> RunReport:
    """Execute the configured suites and write all report files."""
    ctx = config.context()
    cases: list[CaseResult] = []
    curves = []
    for suite in config.suites:
        suite_cases, suite_curves = SUITES[suite](ctx)
        cases.extend(suite_cases)
        curves.extend(suite_curves)
    report = RunReport(
        cases=tuple(cases),
        overall_pass=all(c.passed for c in cases),
        version=__version__,
        config=config.echo(),
    )
    out_dir = Path(config.output_dir)
    try:
        emit_csv(report, curves, out_dir)
        write_report_json(out_dir, report)
        if config.figures:
            render_figures(out_dir, curves)
    except OSError as exc:
        raise OSError(f"cannot write reports under {out_dir}: {exc}") from exc
    return report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monofrac",
        description="Run numerical verification suites for the monotone fraction rules.",
    )
    parser.add_argument("--version", action="version", version=f"monofrac {__version__}")
    parser.add_argument(
        "--list-suites", action="store_true", help="print the available suite names and exit"
    )
    sub = parser.add_subparsers(dest="command")
    vp = sub.add_parser("verify", help="run verification suites from a JSON config")
    vp.add_argument("--config", help="path to the JSON suite configuration")
    vp.add_argument(
        "--suite",
        action="append",
        metavar="NAME",
        help="run only this suite (repeatable; overrides the config list)",
    )
    vp.add_argument("--out", help="output directory (overrides the config)")
    vp.add_argument("--seed", type=int, help="root seed (overrides the config)")
    vp.add_argument("--grid", type=int, help="grid size (overrides the config)")
    vp.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    vp.add_argument("--list-suites", action="store_true", help="print suite names and exit")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "list_suites", False):
        for name in SUITES:
            print(name)
        return 0
    if args.command != "verify":
        parser.print_help()
        return 2
    try:
        if not args.config:
            raise ConfigError("--config is required")
        config = load_config(args.config)
        overrides = {}
        if args.suite:
            overrides["suites"] = tuple(args.suite)
        if args.out:
            overrides["output_dir"] = args.out
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.grid is not None:
            overrides["grid_size"] = args.grid
        if args.no_figures:
            overrides["figures"] = False
        if overrides:
            base = config.echo()
            base.update(overrides)
            base["suites"] = tuple(base["suites"])
            base["sir_cases"] = tuple(tuple(c) for c in base["sir_cases"])
            config = SuiteConfig(**base)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run(config)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    failed = [c for c in report.cases if not c.passed]
    print(
        f"monofrac: {len(report.cases)} cases, {len(report.cases) - len(failed)} passed, "
        f"{len(failed)} failed -> {config.output_dir}"
    )
    for c in failed:
        print(f"  FAIL {c.suite}/{c.case_id} (max violation {c.max_violation:.3e})")
    return 0 if report.overall_pass else 1


if __name__ == "__main__":
    sys.exit(main())
