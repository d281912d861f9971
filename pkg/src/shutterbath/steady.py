"""Dynamical steady state of the shuttered evolution and its effective temperature.

The one-period affine map is a contraction, so the stroboscopic occupation
converges to the fixed point

    n_s = DeltaGamma(tau) / (1 - e^(-Gamma(tau))) - 1/2,

independently of the initial state.  To lowest order in Gamma(tau), and with
the 1/2 dropped in the high-temperature regime, this reduces to half the
ratio of the period-averaged diffusion to the period-averaged dissipation,

    n_s ~ (1/2) integral_0^tau Delta / integral_0^tau gamma,

which with constant Markovian rates gives exactly nbar.  The steady state is
a thermal state, so it carries an effective temperature T_eff = omega0 * n_s
(in units with k_B = 1); n_s generally exceeds the environmental value, i.e.
T_eff > T.  The exact fixed point keeps the 1/2 term.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .bath import DEFAULT_TOL, BathParams, averaged_rates, markovian_rates
from .dynamics import _period_integrals
from .errors import ConvergenceError, DomainError


class EffectiveTemperature(NamedTuple):
    t_eff: float          # units of omega0 / k_B
    ratio: float          # T_eff / T


@dataclass(frozen=True)
class SteadyStateResult:
    """One row of a steady-state sweep."""

    tau: float
    params: BathParams
    n_s_exact: float
    n_s_approx: float
    t_eff_over_t: float
    error: str | None = None


def steady_state_from_integrals(delta_gamma_tau: float, big_gamma_tau: float) -> float:
    """Fixed point from precomputed one-period integrals.

    Raises :class:`DomainError` when the accumulated decay exponent is not
    positive, in which case no contraction (and no steady state) exists.
    """
    if not big_gamma_tau > 0.0:
        raise DomainError(
            f"decay exponent over one period is non-positive ({big_gamma_tau:.6e}); "
            "the one-period map is not a contraction and the steady state is undefined"
        )
    return delta_gamma_tau / -math.expm1(-big_gamma_tau) - 0.5


def steady_state(tau: float, p: BathParams, tol: float = DEFAULT_TOL) -> float:
    """Exact steady-state occupation n_s for shuttering period tau."""
    if tau <= 0.0:
        raise DomainError("period duration tau must be positive")
    big_gamma, delta_gamma = _period_integrals(tau, p, tol)
    try:
        return steady_state_from_integrals(delta_gamma, big_gamma)
    except DomainError as exc:
        raise DomainError(f"{exc} (tau={tau}, r={p.r})") from None


def steady_state_approx(
    tau: float, p: BathParams, tol: float = DEFAULT_TOL, rates: str = "time-dependent"
) -> float:
    """Lowest-order-in-Gamma steady state: half the averaged-rate ratio.

    With ``rates="markovian"`` the time-dependent coefficients are replaced
    by their constant asymptotes, which reproduces the high-temperature
    Markovian occupation nbar exactly.
    """
    if tau <= 0.0:
        raise DomainError("period duration tau must be positive")
    if rates == "markovian":
        m = markovian_rates(p)
        int_delta = m.diffusion * tau
        int_gamma = m.dissipation * tau
    elif rates == "time-dependent":
        avg = averaged_rates(tau, p, tol)
        int_delta = 0.5 * (avg.down + avg.up) * tau
        int_gamma = 0.5 * (avg.down - avg.up) * tau
    else:
        raise DomainError(f"unknown rates mode {rates!r}")
    if int_gamma == 0.0:
        raise DomainError(
            f"integrated dissipation vanishes over one period (tau={tau}, r={p.r}); "
            "the averaged-rate ratio is singular"
        )
    return 0.5 * int_delta / int_gamma


def effective_temperature(
    tau: float, p: BathParams, tol: float = DEFAULT_TOL
) -> EffectiveTemperature:
    """Effective temperature of the thermal steady state, T_eff = omega0 * n_s.

    This is the high-temperature convention (T_eff proportional to n_s); a
    strict Bose-occupation inversion would differ at order 1/nbar.  The ratio
    T_eff/T equals n_s/nbar.
    """
    n_s = steady_state(tau, p, tol)
    return EffectiveTemperature(t_eff=p.omega0 * n_s, ratio=n_s / p.nbar)


def _sweep_point(tau: float, p: BathParams, tol: float) -> SteadyStateResult:
    try:
        exact = steady_state(tau, p, tol)
        approx = steady_state_approx(tau, p, tol)
        return SteadyStateResult(
            tau=tau,
            params=p,
            n_s_exact=exact,
            n_s_approx=approx,
            t_eff_over_t=exact / p.nbar,
        )
    except (DomainError, ConvergenceError, ArithmeticError) as exc:
        nan = float("nan")
        return SteadyStateResult(
            tau=tau, params=p, n_s_exact=nan, n_s_approx=nan, t_eff_over_t=nan,
            error=str(exc),
        )


def sweep_tau(
    taus: Sequence[float],
    p: BathParams,
    tol: float = DEFAULT_TOL,
    threads: int | None = None,
) -> list[SteadyStateResult]:
    """Steady-state results for every period in ``taus``, in input order.

    Points are independent and evaluated by a worker pool; failures are
    recorded in the row's ``error`` field (values NaN) and do not abort the
    sweep.  The output is deterministic regardless of the pool size.
    """
    taus = [float(t) for t in taus]
    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    if workers == 1 or len(taus) <= 1:
        return [_sweep_point(t, p, tol) for t in taus]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: _sweep_point(t, p, tol), taus))
