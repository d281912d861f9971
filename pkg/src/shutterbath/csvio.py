"""Deterministic CSV serialization of the package's result types.

RFC-4180-style output: header row, comma separator, ``.`` decimal point, LF
line endings.  Floats are written with ``repr``, the shortest round-tripping
representation, so identical inputs always produce byte-identical files.
Times are in units of 1/omega0 (multiply by omega_c = r * omega0 for the
cutoff-scaled axis used by the trajectory figures).
"""

from __future__ import annotations

import csv
from pathlib import Path

from .bath import CoefficientTrace
from .dynamics import Trajectory
from .oracle import ComparisonTable
from .steady import SteadyStateResult
from .zeno import ZenoReport


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int,)):
        return str(value)
    return repr(float(value))


def _write_rows(path, header, rows) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_coefficient_csv(trace: CoefficientTrace, path) -> Path:
    path = Path(path)
    rows = (
        (t, d, g, d + g, d - g)
        for t, d, g in zip(trace.times, trace.delta, trace.gamma)
    )
    _write_rows(path, ["t", "delta", "gamma", "delta_plus_gamma", "delta_minus_gamma"], rows)
    return path


def write_trajectory_csv(trajectory: Trajectory, path) -> Path:
    path = Path(path)
    nbar = trajectory.params.nbar if trajectory.params is not None else None
    indices = trajectory.period_index

    def rows():
        for i, (t, n) in enumerate(zip(trajectory.times, trajectory.n_mean)):
            yield (
                t,
                n,
                n / nbar if nbar is not None else None,
                int(indices[i]) if indices is not None else None,
            )

    _write_rows(path, ["t", "n_mean", "n_mean_over_nbar", "period_index"], rows())
    return path


def write_sweep_csv(results: list[SteadyStateResult], path) -> Path:
    path = Path(path)

    def rows():
        for res in results:
            yield (
                res.tau * res.params.omega_c,
                res.n_s_exact,
                res.n_s_approx,
                res.n_s_exact / res.params.nbar,
                res.t_eff_over_t,
                res.error or "",
            )

    _write_rows(
        path,
        ["tau_omega_c", "n_s_exact", "n_s_approx", "n_s_over_nbar", "t_eff_over_t", "error_flag"],
        rows(),
    )
    return path


def write_zeno_summary_csv(report: ZenoReport, path) -> Path:
    path = Path(path)
    p, sched = report.params, report.schedule
    _write_rows(
        path,
        [
            "g", "r", "omega0", "nbar", "tau", "periods", "inspected_periods",
            "short_time_class", "crossover_time", "asymptotic_class",
        ],
        [(
            p.g, p.r, p.omega0, p.nbar, sched.tau, sched.periods,
            report.inspected_periods,
            report.short_time_class.value,
            report.crossover_time,
            report.asymptotic_class.value,
        )],
    )
    return path


def write_diff_trace_csv(report: ZenoReport, path) -> Path:
    path = Path(path)
    trace = report.diff_trace
    rows = zip(trace.times, trace.n_shuttered, trace.n_unshuttered, trace.diff)
    _write_rows(path, ["t", "n_shuttered", "n_unshuttered", "diff"], rows)
    return path


def write_oracle_csv(table: ComparisonTable, path) -> Path:
    path = Path(path)
    rows = zip(
        table.times, table.n_analytic, table.n_oracle,
        table.rel_err, table.leakage, table.thermal_dev,
    )
    _write_rows(
        path,
        ["t", "n_analytic", "n_oracle", "rel_err", "leakage", "thermal_dev"],
        rows,
    )
    return path
