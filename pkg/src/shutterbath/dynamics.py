"""Heating-function dynamics with and without reservoir shuttering.

The mean occupation <n(t)> of the damped oscillator ("heating function")
obeys, for any initial state,

    <n(t)> = e^(-Gamma(t)) <n(0)> + (e^(-Gamma(t)) - 1)/2 + DeltaGamma(t),

with the decay exponent Gamma and damped diffusion integral DeltaGamma of
:mod:`shutterbath.bath`.  When the reservoir is shuttered (switched off and
on with period tau), every switching event resets the system-bath
correlations, so each period evolves by the same law restarted from the
previous period's endpoint.  One period is therefore the affine map

    n -> a n + b,    a = e^(-Gamma(tau)),  b = (e^(-Gamma(tau)) - 1)/2 + DeltaGamma(tau),

and from the ground state the occupation at the period boundaries t = m tau
has the closed stroboscopic form

    <n(m tau)> = (DeltaGamma(tau)/(1 - e^(-Gamma(tau))) - 1/2)(1 - e^(-m Gamma(tau))).

Free evolution between interaction periods is neglected; the time axis is
cumulative interaction time t = m tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bath import (
    DEFAULT_TOL,
    BathParams,
    damped_diffusion_integral,
    decay_exponent,
)
from .errors import DomainError


@dataclass(frozen=True)
class ShutterSchedule:
    """Off/on switching protocol: ``periods`` repetitions of duration ``tau``."""

    tau: float
    periods: int

    def __post_init__(self):
        tau = float(self.tau)
        if not math.isfinite(tau) or tau <= 0.0:
            raise DomainError(f"period duration tau must be positive, got {self.tau!r}")
        periods = self.periods
        if periods != int(periods) or int(periods) < 0:
            raise DomainError(f"period count must be a non-negative integer, got {periods!r}")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "periods", int(periods))

    @property
    def total_time(self) -> float:
        return self.tau * self.periods


@dataclass(frozen=True)
class Trajectory:
    """Heating-function time series (times in units of 1/omega0).

    ``params`` records the bath behind the run; it is None only for
    constant-rate oracle runs, which have no underlying bath parameters.
    """

    times: np.ndarray
    n_mean: np.ndarray
    shuttered: bool
    params: BathParams | None
    schedule: ShutterSchedule | None = None
    period_index: np.ndarray | None = None

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        n_mean = np.asarray(self.n_mean, dtype=float)
        if times.shape != n_mean.shape or times.ndim != 1:
            raise DomainError("trajectory arrays must be one-dimensional and of equal length")
        if times.size > 1 and np.any(np.diff(times) <= 0.0):
            raise DomainError("trajectory times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "n_mean", n_mean)
        if self.period_index is not None:
            idx = np.asarray(self.period_index, dtype=int)
            if idx.shape != times.shape:
                raise DomainError("period_index must match the time grid")
            object.__setattr__(self, "period_index", idx)

    @property
    def n_over_nbar(self) -> np.ndarray:
        if self.params is None:
            raise DomainError("trajectory has no bath parameters; nbar is undefined")
        return self.n_mean / self.params.nbar


@dataclass(frozen=True)
class PeriodMap:
    """Affine one-period update n -> gain * n + offset of the shuttered evolution.

    ``gain_complement`` holds 1 - gain evaluated without cancellation (the
    gain is exponentially close to one for short periods), so the fixed
    point stays accurate at small decay exponents.
    """

    gain: float
    offset: float
    tau: float
    gain_complement: float

    def apply(self, n: float) -> float:
        return self.gain * n + self.offset

    def fixed_point(self) -> float:
        if not 0.0 < self.gain_complement <= 1.0:
            raise DomainError(
                f"one-period gain {self.gain} is not a contraction; no fixed point exists"
            )
        return self.offset / self.gain_complement

    def iterate(self, n0: float, m: int) -> float:
        """Occupation after m periods, via the closed geometric form."""
        if m < 0:
            raise DomainError("period count must be non-negative")
        gain_m = self.gain**m
        return gain_m * n0 + self.fixed_point() * (1.0 - gain_m)


@lru_cache(maxsize=None)
def _period_integrals(tau: float, p: BathParams, tol: float) -> tuple[float, float]:
    """(Gamma(tau), DeltaGamma(tau)), cached so long evolutions integrate once."""
    return (
        float(decay_exponent(tau, p, tol)),
        float(damped_diffusion_integral(tau, p, tol)),
    )


def period_map(tau: float, p: BathParams, tol: float = DEFAULT_TOL) -> PeriodMap:
    """One-period affine map of the shuttered evolution (cached per (tau, p, tol))."""
    if tau <= 0.0:
        raise DomainError("period duration tau must be positive")
    big_gamma, delta_gamma = _period_integrals(tau, p, tol)
    loss = -math.expm1(-big_gamma)  # 1 - e^(-Gamma), stable for small Gamma
    return PeriodMap(
        gain=math.exp(-big_gamma),
        offset=delta_gamma - 0.5 * loss,
        tau=tau,
        gain_complement=loss,
    )


def heating_unshuttered(t: float, n0: float, p: BathParams, tol: float = DEFAULT_TOL) -> float:
    """Mean occupation at time t under uninterrupted coupling, from <n(0)> = n0."""
    if t < 0.0:
        raise DomainError("time must be non-negative")
    if n0 < 0.0:
        raise DomainError("initial occupation must be non-negative")
    decay = math.exp(-float(decay_exponent(t, p, tol)))
    return decay * n0 + (decay - 1.0) / 2.0 + float(damped_diffusion_integral(t, p, tol))


def heating_stroboscopic(
    m: int, tau: float, p: BathParams, tol: float = DEFAULT_TOL, n0: float = 0.0
) -> float:
    """Mean occupation at the m-th period boundary of the shuttered evolution.

    For the ground-state start (n0 = 0) this is the closed stroboscopic
    solution; n0 > 0 is supported through the equivalent affine-map power
    a^m n0 + b (1-a^m)/(1-a), whose limit is the same n0-independent steady
    state.  tau = 0 (continuous-measurement limit) is rejected rather than
    evaluated as a 0/0 limit.
    """
    if m != int(m) or int(m) < 0:
        raise DomainError("period count m must be a non-negative integer")
    if tau <= 0.0:
        raise DomainError("period duration tau must be positive")
    if n0 < 0.0:
        raise DomainError("initial occupation must be non-negative")
    m = int(m)
    big_gamma, delta_gamma = _period_integrals(tau, p, tol)
    if big_gamma <= 0.0:
        raise DomainError(
            f"decay exponent over one period is non-positive (Gamma={big_gamma:.3e} at "
            f"tau={tau}, r={p.r}); the stroboscopic solution is undefined"
        )
    approach = -math.expm1(-m * big_gamma)  # 1 - e^(-m Gamma)
    value = (delta_gamma / -math.expm1(-big_gamma) - 0.5) * approach
    if n0 != 0.0:
        value += math.exp(-m * big_gamma) * n0
    return value


def evolve_unshuttered(
    t_max: float,
    samples: int,
    n0: float,
    p: BathParams,
    tol: float = DEFAULT_TOL,
) -> Trajectory:
    """Uniform-grid heating trajectory over [0, t_max] without shuttering.

    DeltaGamma is obtained from a single adaptive sweep over the grid, not
    restarted per sample.
    """
    if t_max <= 0.0:
        raise DomainError("t_max must be positive")
    if samples < 2:
        raise DomainError("at least two samples are required")
    if n0 < 0.0:
        raise DomainError("initial occupation must be non-negative")
    times = np.linspace(0.0, t_max, samples)
    decay = np.exp(-decay_exponent(times, p, tol))
    n_mean = decay * n0 + (decay - 1.0) / 2.0 + damped_diffusion_integral(times, p, tol)
    return Trajectory(times=times, n_mean=n_mean, shuttered=False, params=p)


def evolve_shuttered(
    schedule: ShutterSchedule,
    p: BathParams,
    samples_per_period: int = 20,
    n0: float = 0.0,
    tol: float = DEFAULT_TOL,
) -> Trajectory:
    """Heating trajectory under the shuttered protocol, resolved inside periods.

    Each period is evolved by the unshuttered law restarted from the previous
    period's endpoint (the switching resets the system-bath correlations).
    Samples are placed at k tau + j tau/samples_per_period, so every period
    boundary appears exactly once; the boundary values use the same cached
    one-period integrals as :func:`heating_stroboscopic`, making stroboscopic
    extraction from the trajectory lossless.
    """
    if samples_per_period < 1:
        raise DomainError("samples_per_period must be at least 1")
    if n0 < 0.0:
        raise DomainError("initial occupation must be non-negative")
    tau, m = schedule.tau, schedule.periods
    if m == 0:
        return Trajectory(
            times=np.array([0.0]),
            n_mean=np.array([float(n0)]),
            shuttered=True,
            params=p,
            schedule=schedule,
            period_index=np.array([0]),
        )

    offsets = tau * np.arange(1, samples_per_period + 1) / samples_per_period
    offsets[-1] = tau
    decay = np.exp(-decay_exponent(offsets, p, tol))
    drive = (decay - 1.0) / 2.0 + damped_diffusion_integral(offsets, p, tol)
    # pin the period endpoint to the cached integrals so that chained
    # endpoints match heating_stroboscopic to rounding
    endpoint = period_map(tau, p, tol)
    decay[-1] = endpoint.gain
    drive[-1] = endpoint.offset

    times = np.empty(1 + m * samples_per_period)
    values = np.empty_like(times)
    index = np.empty_like(times, dtype=int)
    times[0], values[0], index[0] = 0.0, n0, 0
    n = float(n0)
    for k in range(m):
        lo = 1 + k * samples_per_period
        hi = lo + samples_per_period
        times[lo:hi] = k * tau + offsets
        times[hi - 1] = (k + 1) * tau  # boundaries are exact grid points
        values[lo:hi] = decay * n + drive
        index[lo:hi] = k
        n = values[hi - 1]
    return Trajectory(
        times=times,
        n_mean=values,
        shuttered=True,
        params=p,
        schedule=schedule,
        period_index=index,
    )
