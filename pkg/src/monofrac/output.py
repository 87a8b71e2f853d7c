"""Report emission: per-curve CSV files, a one-row-per-case summary, a JSON
run report, and rendered figures alongside the CSVs.

CSV content is a pure function of the run's inputs (config and seed), so
repeated runs are byte-identical; wall times live only in the JSON report.
"""
from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .suites import CaseResult, Curve


@dataclass(frozen=True)
class RunReport:
    cases: tuple[CaseResult, ...]
    overall_pass: bool
    version: str
    config: dict = field(default_factory=dict)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_").lower()


def curve_path(out_dir: Path, curve: Curve) -> Path:
    return out_dir / f"{_slug(curve.name)}.csv"


def write_curve_csv(out_dir: Path, curve: Curve) -> Path:
    path = curve_path(out_dir, curve)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([curve.x_label, *(label for label, _ in curve.columns)])
        for i, x in enumerate(curve.x):
            w.writerow([_fmt(x), *(_fmt(vals[i]) for _, vals in curve.columns)])
    return path


def write_summary_csv(out_dir: Path, cases: Sequence[CaseResult]) -> Path:
    path = out_dir / "summary.csv"
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["suite", "case_id", "pass", "max_violation"])
        for c in cases:
            w.writerow([c.suite, c.case_id, str(c.passed).lower(), _fmt(c.max_violation)])
    return path


def emit_csv(report: RunReport, curves: Sequence[Curve], out_dir: Path) -> list[Path]:
    """One CSV per sampled curve plus the summary file."""
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [write_curve_csv(out_dir, c) for c in curves]
    paths.append(write_summary_csv(out_dir, report.cases))
    return paths


def write_report_json(out_dir: Path, report: RunReport) -> Path:
    path = out_dir / "report.json"
    payload = {
        "tool": "monofrac",
        "version": report.version,
        "overall_pass": report.overall_pass,
        "config": report.config,
        "cases": [
            {
                "suite": c.suite,
                "case_id": c.case_id,
                "pass": c.passed,
                "max_violation": c.max_violation,
                "verdicts": c.verdicts,
                "wall_time_s": round(c.wall_time, 6),
            }
            for c in report.cases
        ],
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def render_figures(out_dir: Path, curves: Sequence[Curve]) -> list[Path]:
    """One PNG per curve, next to its CSV.

    The Software metadata chunk is stripped so the bytes depend only on the
    plotted data.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    paths = []
    for curve in curves:
        fig, ax = plt.subplots(figsize=(6.0, 3.6), constrained_layout=True)
        for label, vals in curve.columns:
            ax.plot(curve.x, vals, marker=".", markersize=3, linewidth=1.0, label=label)
        ax.set_xlabel(curve.x_label)
        ax.set_title(curve.name, fontsize=9)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
        path = out_dir / f"{_slug(curve.name)}.png"
        fig.savefig(path, dpi=110, metadata={"Software": None})
        plt.close(fig)
        paths.append(path)
    return paths
