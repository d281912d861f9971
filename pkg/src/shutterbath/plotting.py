"""Figure rendering for the report path of the CLI.

Renders the trajectory, sweep, and difference-trace datasets to PNG next to
their CSV files.  Axes follow the cutoff-scaled convention: time as
omega_c * t and occupation as <n>/nbar.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamics import Trajectory
from .steady import SteadyStateResult
from .zeno import ZenoReport

_FIGSIZE = (7.0, 4.5)
_DPI = 150


def _finish(fig, ax, path, xlabel, ylabel, title=None):
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def save_trajectory_figure(curves, path, title=None) -> Path:
    """Plot labelled trajectories as <n>/nbar against omega_c * t.

    ``curves`` is an iterable of (Trajectory, label) pairs; each curve is
    scaled by its own bath's cutoff frequency.
    """
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for trajectory, label in curves:
        wc = trajectory.params.omega_c
        ax.plot(trajectory.times * wc, trajectory.n_over_nbar, label=label)
    ax.legend()
    return _finish(fig, ax, path, r"$\omega_c t$", r"$\langle n \rangle / \bar{n}$", title)


def save_sweep_figure(results: list[SteadyStateResult], path, title=None) -> Path:
    """Steady-state occupation against the shuttering period omega_c * tau."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ok = [r for r in results if not r.error]
    tau_wc = [r.tau * r.params.omega_c for r in ok]
    ax.plot(tau_wc, [r.n_s_exact / r.params.nbar for r in ok], "-", label="exact")
    ax.plot(tau_wc, [r.n_s_approx / r.params.nbar for r in ok], "--", label="averaged-rate ratio")
    ax.set_xscale("log")
    ax.legend()
    return _finish(
        fig, ax, path, r"$\omega_c \tau$", r"$\langle n \rangle_s / \bar{n}$", title
    )


def save_diff_trace_figure(report: ZenoReport, path, title=None) -> Path:
    """Shuttered-minus-unshuttered difference signal with the crossover marked."""
    trace = report.diff_trace
    wc = report.params.omega_c
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(trace.times * wc, trace.diff, "-", label="shuttered - unshuttered")
    ax.axhline(0.0, color="k", lw=0.8)
    if report.crossover_time is not None:
        ax.axvline(
            report.crossover_time * wc, color="C3", ls="--",
            label=f"crossover at $\\omega_c t$ = {report.crossover_time * wc:.0f}",
        )
    ax.legend()
    return _finish(
        fig, ax, path, r"$\omega_c t$", r"$\Delta \langle n \rangle$", title
    )
