"""Zeno / anti-Zeno classification of the shuttered heating dynamics.

Shuttering can reduce the oscillator heating relative to the uninterrupted
evolution (quantum Zeno effect) or enhance it (anti-Zeno effect).  Which one
appears depends on the period tau, the resonance ratio r, and, through the
Zeno-to-anti-Zeno crossover, on the total evolution time: dynamics that
starts with reduced heating always ends above the unshuttered long-time
level, because the shuttered steady state exceeds the thermal value.

All comparisons are made on the period-boundary (stroboscopic) envelope;
intra-period wiggles are ignored.  The first boundary is excluded from the
short-time classification since the two protocols coincide on the first
period by construction.  Comparisons carry a dead band of 1e-9 * nbar so
that floating-point ties never flip a verdict.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bath import DEFAULT_TOL, BathParams, damped_diffusion_integral, decay_exponent
from .dynamics import ShutterSchedule, period_map
from .errors import DomainError
from .steady import steady_state

#: Comparison dead band, in units of nbar.
DEADBAND_SCALE = 1e-9
#: Number of consecutive new-sign samples required to accept a crossover.
CROSSOVER_PERSISTENCE = 3


class ZenoClass(enum.Enum):
    ZENO = "zeno"
    ANTI_ZENO = "anti-zeno"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class DiffTrace:
    """Stroboscopic difference signal <n>_shuttered - <n>_unshuttered."""

    times: np.ndarray
    n_shuttered: np.ndarray
    n_unshuttered: np.ndarray

    @property
    def diff(self) -> np.ndarray:
        return self.n_shuttered - self.n_unshuttered


@dataclass(frozen=True)
class ZenoReport:
    short_time_class: ZenoClass
    crossover_time: float | None
    asymptotic_class: ZenoClass
    diff_trace: DiffTrace
    params: BathParams
    schedule: ShutterSchedule
    inspected_periods: int


def stroboscopic_comparison(
    tau: float, p: BathParams, periods: int, tol: float = DEFAULT_TOL
) -> DiffTrace:
    """Shuttered vs unshuttered occupations at t = tau, 2 tau, ..., periods*tau."""
    if periods < 1:
        raise DomainError("at least one period is required")
    pm = period_map(tau, p, tol)
    n_sh = np.empty(periods)
    n = 0.0
    for k in range(periods):
        n = pm.apply(n)
        n_sh[k] = n
    times = tau * np.arange(1, periods + 1)
    decay = np.exp(-decay_exponent(times, p, tol))
    n_un = (decay - 1.0) / 2.0 + damped_diffusion_integral(times, p, tol)
    return DiffTrace(times=times, n_shuttered=n_sh, n_unshuttered=n_un)


def classify_diff(diff: np.ndarray, deadband: float) -> ZenoClass:
    """Zeno if every sample sits below -deadband, anti-Zeno if above +deadband."""
    if diff.size == 0:
        return ZenoClass.INDETERMINATE
    if np.all(diff < -deadband):
        return ZenoClass.ZENO
    if np.all(diff > deadband):
        return ZenoClass.ANTI_ZENO
    return ZenoClass.INDETERMINATE


def classify_level(value: float, reference: float, deadband: float) -> ZenoClass:
    """Compare a steady level against a reference with a dead band."""
    if value > reference + deadband:
        return ZenoClass.ANTI_ZENO
    if value < reference - deadband:
        return ZenoClass.ZENO
    return ZenoClass.INDETERMINATE


def classify_short_time(
    schedule: ShutterSchedule, p: BathParams, k: int, tol: float = DEFAULT_TOL
) -> ZenoClass:
    """Classify the first k periods as Zeno, anti-Zeno, or indeterminate.

    The comparison runs over the period boundaries 2 tau ... k tau; the first
    boundary is skipped because shuttered and unshuttered evolutions coincide
    on [0, tau], so k = 1 is always indeterminate.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    if k > schedule.periods:
        raise DomainError(f"k={k} exceeds the scheduled period count {schedule.periods}")
    trace = stroboscopic_comparison(schedule.tau, p, k, tol)
    return classify_diff(trace.diff[1:], DEADBAND_SCALE * p.nbar)


def crossover_time(
    schedule: ShutterSchedule,
    p: BathParams,
    t_max: float,
    tol: float = DEFAULT_TOL,
    persistence: int = CROSSOVER_PERSISTENCE,
) -> float | None:
    """First stroboscopic time where the difference signal flips sign for good.

    The initial sign is taken from the first sample outside the dead band;
    the crossover is the first later sample of the opposite sign that stays
    outside the dead band for ``persistence`` consecutive samples (the signal
    can graze zero near the crossing).  Returns None when no persistent flip
    occurs within [0, t_max], e.g. for dynamics that is anti-Zeno throughout.
    """
    if t_max > schedule.total_time:
        raise DomainError(
            f"t_max={t_max} exceeds the scheduled window {schedule.total_time}"
        )
    periods = int(math.floor(t_max / schedule.tau + 1e-9))
    if periods < 2:
        return None
    trace = stroboscopic_comparison(schedule.tau, p, periods, tol)
    deadband = DEADBAND_SCALE * p.nbar
    diff = trace.diff
    outside = np.abs(diff) > deadband
    if not np.any(outside):
        return None
    first = int(np.argmax(outside))
    initial_sign = math.copysign(1.0, diff[first])
    flipped = outside & (np.sign(diff) == -initial_sign)
    for i in np.flatnonzero(flipped):
        if i + persistence > diff.size:
            break
        if np.all(flipped[i : i + persistence]):
            return float(trace.times[i])
    return None


def asymptotic_class(tau: float, p: BathParams, tol: float = DEFAULT_TOL) -> ZenoClass:
    """Long-time verdict: steady state vs the unshuttered level nbar - 1/2."""
    if tau <= 0.0:
        raise DomainError("period duration tau must be positive")
    return classify_level(
        steady_state(tau, p, tol), p.nbar - 0.5, DEADBAND_SCALE * p.nbar
    )


def zeno_report(
    schedule: ShutterSchedule,
    p: BathParams,
    k: int,
    tol: float = DEFAULT_TOL,
) -> ZenoReport:
    """Full classification over the scheduled window.

    Short-time class over the first k periods, crossover search and the
    difference trace over all scheduled periods, and the asymptotic class
    from the steady-state comparison.
    """
    if schedule.periods < 1:
        raise DomainError("the schedule must contain at least one period")
    trace = stroboscopic_comparison(schedule.tau, p, schedule.periods, tol)
    return ZenoReport(
        short_time_class=classify_short_time(schedule, p, k, tol),
        crossover_time=crossover_time(schedule, p, schedule.total_time, tol),
        asymptotic_class=asymptotic_class(schedule.tau, p, tol),
        diff_trace=trace,
        params=p,
        schedule=schedule,
        inspected_periods=k,
    )
