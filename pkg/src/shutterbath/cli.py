"""Command line front end.

Subcommands: ``coeffs``, ``evolve``, ``steady``, ``sweep``, ``zeno``,
``oracle-check``, and ``figure {1a|1b|2a|2b|3}`` presets that reproduce the
benchmark trajectory, crossover, and sweep datasets in one command.

Times and periods on the command line are given in units of 1/omega_c by
default (``--units omega0`` switches the same flags to 1/omega0); CSV files
store times in 1/omega0.  Every command writes CSV per the documented
schemas and prints a one-line summary with the key numbers to stdout.  The
``figure`` presets additionally render a PNG next to the CSV output
(``--no-plot`` suppresses it); other data commands accept ``--plot``.

Exit codes: 0 success, 2 usage or configuration error, 3 numerical
convergence failure, 4 domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import csvio, plotting
from .bath import BathParams, coefficient_trace, markovian_rates
from .dynamics import ShutterSchedule, evolve_shuttered, evolve_unshuttered
from .errors import ConvergenceError, DomainError
from .oracle import (
    compare_shuttered,
    compare_unshuttered,
    nonselective_measurement_equivalence,
)
from .steady import effective_temperature, steady_state, steady_state_approx, sweep_tau
from .zeno import crossover_time, zeno_report


class UsageError(Exception):
    """Bad flags or configuration input (exit code 2)."""


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


KEY_TYPES = {
    "g": float,
    "r": float,
    "omega0": float,
    "nbar": float,
    "tau_wc": float,
    "periods": int,
    "samples_per_period": int,
    "tmax_wc": float,
    "tol": float,
    "threads": int,
    "out": str,
    "units": str,
    "samples": int,
    "n0": float,
    "k": int,
    "truncation": int,
    "tau_min_wc": float,
    "tau_max_wc": float,
    "points": int,
    "spacing": str,
    "plot": _parse_bool,
    "equivalence": _parse_bool,
}

DEFAULTS = {
    "g": 0.1,
    "r": 10.0,
    "omega0": 1.0,
    "nbar": 10.0,
    "tol": 1e-10,
    "units": "omegac",
    "threads": None,
    "out": None,
    "tau_wc": None,
    "periods": None,
    "samples_per_period": 20,
    "tmax_wc": None,
    "samples": 501,
    "n0": 0.0,
    "k": 3,
    "truncation": None,
    "tau_min_wc": 0.3,
    "tau_max_wc": 50.0,
    "points": 60,
    "spacing": "log",
    "plot": None,
    "equivalence": False,
}


def load_config(path) -> dict:
    """Parse a flat ``key = value`` configuration file; unknown keys are errors."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key = key.strip().replace("-", "_")
        if key not in KEY_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = KEY_TYPES[key](value.strip())
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def _resolve(args: argparse.Namespace) -> SimpleNamespace:
    """Merge CLI flags over config-file values over built-in defaults."""
    config = load_config(args.config) if getattr(args, "config", None) else {}
    resolved = {}
    explicit = set()
    for key in KEY_TYPES:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            resolved[key] = cli_value
            explicit.add(key)
        elif key in config:
            resolved[key] = config[key]
            explicit.add(key)
        else:
            resolved[key] = DEFAULTS.get(key)
    if resolved["units"] not in ("omegac", "omega0"):
        raise UsageError(f"--units must be 'omegac' or 'omega0', got {resolved['units']!r}")
    if resolved["spacing"] not in ("log", "linear"):
        raise UsageError(f"--spacing must be 'log' or 'linear', got {resolved['spacing']!r}")
    opts = SimpleNamespace(**resolved)
    opts.explicit = explicit
    return opts


def _bath(opts) -> BathParams:
    return BathParams(g=opts.g, r=opts.r, nbar=opts.nbar, omega0=opts.omega0)


def _time_scale(p: BathParams, units: str) -> float:
    return p.omega_c if units == "omegac" else p.omega0


def _require(opts, key: str, flag: str):
    value = getattr(opts, key)
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _out_path(opts, default_name: str) -> Path:
    return Path(opts.out) if opts.out else Path(default_name)


# --- subcommand handlers ---------------------------------------------------


def cmd_coeffs(opts) -> int:
    p = _bath(opts)
    tmax_scaled = opts.tmax_wc if opts.tmax_wc is not None else 10.0
    t_max = tmax_scaled / _time_scale(p, opts.units)
    trace = coefficient_trace(p, t_max, opts.samples)
    path = csvio.write_coefficient_csv(trace, _out_path(opts, "coeffs.csv"))
    rates = markovian_rates(p)
    min_down = float(np.min(trace.delta + trace.gamma))
    min_up = float(np.min(trace.delta - trace.gamma))
    print(
        f"coeffs: wrote {path}; delta_M={rates.diffusion:.6g} gamma_M={rates.dissipation:.6g} "
        f"min(delta+gamma)={min_down:.4g} min(delta-gamma)={min_up:.4g}"
    )
    return 0


def cmd_evolve(opts) -> int:
    p = _bath(opts)
    scale = _time_scale(p, opts.units)
    if opts.periods is not None and opts.periods > 0:
        tau = _require(opts, "tau_wc", "--tau-wc") / scale
        schedule = ShutterSchedule(tau=tau, periods=opts.periods)
        trajectory = evolve_shuttered(
            schedule, p, samples_per_period=opts.samples_per_period,
            n0=opts.n0, tol=opts.tol,
        )
        label = f"shuttered tau_wc={opts.tau_wc}"
    else:
        tmax = _require(opts, "tmax_wc", "--tmax-wc") / scale
        trajectory = evolve_unshuttered(tmax, opts.samples, opts.n0, p, tol=opts.tol)
        label = "unshuttered"
    path = csvio.write_trajectory_csv(trajectory, _out_path(opts, "trajectory.csv"))
    written = [str(path)]
    if opts.plot:
        written.append(str(plotting.save_trajectory_figure(
            [(trajectory, label)], path.with_suffix(".png"))))
    final_n = trajectory.n_mean[-1]
    print(
        f"evolve: wrote {' '.join(written)}; t_end={trajectory.times[-1]:.6g} "
        f"n_end={final_n:.6g} n_end_over_nbar={final_n / p.nbar:.6g}"
    )
    return 0


def cmd_steady(opts) -> int:
    p = _bath(opts)
    tau = _require(opts, "tau_wc", "--tau-wc") / _time_scale(p, opts.units)
    n_s = steady_state(tau, p, opts.tol)
    approx = steady_state_approx(tau, p, opts.tol)
    teff = effective_temperature(tau, p, opts.tol)
    if opts.out:
        results = sweep_tau([tau], p, opts.tol, threads=1)
        csvio.write_sweep_csv(results, opts.out)
    print(
        f"steady: tau_wc={tau * p.omega_c:.6g} n_s={n_s:.6g} "
        f"n_s_over_nbar={n_s / p.nbar:.6g} n_s_approx={approx:.6g} "
        f"t_eff_over_t={teff.ratio:.6g}"
    )
    return 0


def cmd_sweep(opts) -> int:
    p = _bath(opts)
    scale = _time_scale(p, opts.units)
    if opts.points < 1:
        raise UsageError("--points must be positive")
    if opts.spacing == "log":
        grid_scaled = np.geomspace(opts.tau_min_wc, opts.tau_max_wc, opts.points)
    else:
        grid_scaled = np.linspace(opts.tau_min_wc, opts.tau_max_wc, opts.points)
    results = sweep_tau(grid_scaled / scale, p, opts.tol, threads=opts.threads)
    path = csvio.write_sweep_csv(results, _out_path(opts, "sweep.csv"))
    written = [str(path)]
    if opts.plot:
        written.append(str(plotting.save_sweep_figure(results, path.with_suffix(".png"))))
    failures = sum(1 for r in results if r.error)
    print(
        f"sweep: wrote {' '.join(written)}; points={len(results)} failures={failures} "
        f"n_s_first={results[0].n_s_exact:.6g} n_s_last={results[-1].n_s_exact:.6g}"
    )
    return 0


def cmd_zeno(opts) -> int:
    p = _bath(opts)
    scale = _time_scale(p, opts.units)
    tau = _require(opts, "tau_wc", "--tau-wc") / scale
    periods = _require(opts, "periods", "--periods")
    schedule = ShutterSchedule(tau=tau, periods=periods)
    k = min(opts.k, periods)
    report = zeno_report(schedule, p, k, opts.tol)
    path = csvio.write_zeno_summary_csv(report, _out_path(opts, "zeno.csv"))
    trace_path = csvio.write_diff_trace_csv(report, path.with_name(path.stem + "_trace.csv"))
    written = [str(path), str(trace_path)]
    if opts.plot:
        written.append(str(plotting.save_diff_trace_figure(report, path.with_suffix(".png"))))
    crossover = report.crossover_time
    crossover_txt = f"{crossover * p.omega_c:.6g}" if crossover is not None else "none"
    print(
        f"zeno: wrote {' '.join(written)}; short_time={report.short_time_class.value} "
        f"crossover_wc_t={crossover_txt} asymptotic={report.asymptotic_class.value}"
    )
    return 0


def _default_truncation(p: BathParams, tau: float | None, tol: float) -> int:
    # geometric tails need ~40x the mean for negligible tail mass
    estimate = steady_state(tau, p, tol) if tau is not None else p.nbar
    return max(50, math.ceil(40.0 * estimate))


def cmd_oracle_check(opts) -> int:
    p = _bath(opts)
    scale = _time_scale(p, opts.units)
    if opts.equivalence:
        tau = _require(opts, "tau_wc", "--tau-wc") / scale
        periods = _require(opts, "periods", "--periods")
        truncation = opts.truncation or _default_truncation(p, tau, opts.tol)
        report = nonselective_measurement_equivalence(
            tau, p, periods, truncation,
            samples_per_period=min(opts.samples_per_period, 8),
        )
        print(
            f"oracle-check: equivalence over {periods} periods, truncation={truncation}; "
            f"max_boundary_rel_err={report.max_boundary_rel_err:.6g} "
            f"max_offgrid_rel_err={report.max_offgrid_rel_err:.6g} (off-grid mismatch expected)"
        )
        return 0
    if opts.periods is not None and opts.periods > 0:
        tau = _require(opts, "tau_wc", "--tau-wc") / scale
        schedule = ShutterSchedule(tau=tau, periods=opts.periods)
        truncation = opts.truncation or _default_truncation(p, tau, opts.tol)
        table = compare_shuttered(
            p, schedule, truncation=truncation,
            samples_per_period=min(opts.samples_per_period, 4),
        )
        mode = f"shuttered ({opts.periods} periods)"
    else:
        tmax_scaled = opts.tmax_wc if opts.tmax_wc is not None else 50.0
        truncation = opts.truncation or _default_truncation(p, None, opts.tol)
        table = compare_unshuttered(
            p, tmax_scaled / scale, truncation=truncation,
            samples=min(opts.samples, 201),
        )
        mode = "unshuttered"
    path = csvio.write_oracle_csv(table, _out_path(opts, "oracle.csv"))
    print(
        f"oracle-check: {mode}, truncation={truncation}, wrote {path}; "
        f"max_rel_err={table.max_rel_err:.6g} max_thermal_dev={table.max_thermal_dev:.6g} "
        f"final_leakage={table.leakage[-1]:.6g}"
    )
    return 0


# --- figure presets ---------------------------------------------------------

FIGURE_NAMES = ("1a", "1b", "2a", "2b", "3")


def _figure_short_time(opts, preset: str) -> int:
    # the resonance ratio is what distinguishes the 1a/1b presets; it is fixed
    p = BathParams(g=opts.g, r=(10.0 if preset == "1a" else 0.1),
                   nbar=opts.nbar, omega0=opts.omega0)
    tau = (opts.tau_wc if opts.tau_wc is not None else 0.5) / _time_scale(p, opts.units)
    periods = opts.periods if opts.periods is not None else 4
    spp = opts.samples_per_period if "samples_per_period" in opts.explicit else 40
    schedule = ShutterSchedule(tau=tau, periods=periods)
    shuttered = evolve_shuttered(schedule, p, samples_per_period=spp, tol=opts.tol)
    unshuttered = evolve_unshuttered(schedule.total_time, periods * spp + 1, 0.0, p, opts.tol)
    stem = Path(opts.out) if opts.out else Path(f"fig{preset}")
    written = [
        str(csvio.write_trajectory_csv(shuttered, stem.with_name(stem.name + "_shuttered.csv"))),
        str(csvio.write_trajectory_csv(unshuttered, stem.with_name(stem.name + "_unshuttered.csv"))),
    ]
    if opts.plot is not False:
        written.append(str(plotting.save_trajectory_figure(
            [(shuttered, "shuttered"), (unshuttered, "unshuttered")],
            stem.with_suffix(".png"),
            title=f"short-time heating, r={p.r:g}",
        )))
    print(
        f"figure {preset}: wrote {' '.join(written)}; "
        f"n_shuttered_end={shuttered.n_mean[-1]:.6g} n_unshuttered_end={unshuttered.n_mean[-1]:.6g}"
    )
    return 0


def _figure_long_time(opts, preset: str) -> int:
    t_end_wc = 1500.0 if preset == "2a" else 10000.0
    if opts.tmax_wc is not None:
        t_end_wc = opts.tmax_wc
    tau_wc = opts.tau_wc if opts.tau_wc is not None else 1.0
    periods = opts.periods if opts.periods is not None else int(round(t_end_wc / tau_wc))
    p_res = BathParams(g=opts.g, r=10.0, nbar=opts.nbar, omega0=opts.omega0)
    p_off = BathParams(g=opts.g, r=0.1, nbar=opts.nbar, omega0=opts.omega0)

    curves = []
    unshuttered = evolve_unshuttered(
        t_end_wc / p_res.omega_c, min(2001, int(t_end_wc) + 1), 0.0, p_res, opts.tol
    )
    curves.append((unshuttered, "unshuttered, r=10"))
    tails = {}
    for p_i, key in ((p_res, "r10"), (p_off, "r0p1")):
        schedule = ShutterSchedule(tau=tau_wc / p_i.omega_c, periods=periods)
        trajectory = evolve_shuttered(schedule, p_i, samples_per_period=1, tol=opts.tol)
        curves.append((trajectory, f"shuttered, r={p_i.r:g}"))
        tails[key] = trajectory
    stem = Path(opts.out) if opts.out else Path(f"fig{preset}")
    written = [
        str(csvio.write_trajectory_csv(unshuttered, stem.with_name(stem.name + "_unshuttered.csv"))),
        str(csvio.write_trajectory_csv(tails["r10"], stem.with_name(stem.name + "_shuttered_r10.csv"))),
        str(csvio.write_trajectory_csv(tails["r0p1"], stem.with_name(stem.name + "_shuttered_r0p1.csv"))),
    ]
    if opts.plot is not False:
        written.append(str(plotting.save_trajectory_figure(
            curves, stem.with_suffix(".png"), title="approach to the dynamical steady state",
        )))
    schedule_res = ShutterSchedule(tau=tau_wc / p_res.omega_c, periods=periods)
    crossover = crossover_time(schedule_res, p_res, schedule_res.total_time, opts.tol)
    crossover_txt = (
        f"{crossover * p_res.omega_c:.6g}" if crossover is not None else "none"
    )
    n_s_res = steady_state(tau_wc / p_res.omega_c, p_res, opts.tol)
    n_s_off = steady_state(tau_wc / p_off.omega_c, p_off, opts.tol)
    print(
        f"figure {preset}: wrote {' '.join(written)}; "
        f"n_s_r10_over_nbar={n_s_res / p_res.nbar:.6g} "
        f"n_s_r0p1_over_nbar={n_s_off / p_off.nbar:.6g} crossover_wc_t={crossover_txt}"
    )
    return 0


def _figure_sweep(opts) -> int:
    p = _bath(opts)
    grid_wc = np.geomspace(opts.tau_min_wc, opts.tau_max_wc, opts.points)
    results = sweep_tau(grid_wc / p.omega_c, p, opts.tol, threads=opts.threads)
    stem = Path(opts.out) if opts.out else Path("fig3")
    written = [str(csvio.write_sweep_csv(results, stem.with_suffix(".csv")))]
    if opts.plot is not False:
        written.append(str(plotting.save_sweep_figure(
            results, stem.with_suffix(".png"),
            title="steady state vs shuttering period",
        )))
    print(
        f"figure 3: wrote {' '.join(written)}; "
        f"n_s_over_nbar_first={results[0].n_s_exact / p.nbar:.6g} "
        f"n_s_over_nbar_last={results[-1].n_s_exact / p.nbar:.6g}"
    )
    return 0


def cmd_figure(opts) -> int:
    preset = opts.preset
    if preset in ("1a", "1b"):
        return _figure_short_time(opts, preset)
    if preset in ("2a", "2b"):
        return _figure_long_time(opts, preset)
    return _figure_sweep(opts)


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    bath = common.add_argument_group("bath parameters")
    bath.add_argument("--g", type=float, help="dimensionless coupling (default 0.1)")
    bath.add_argument("--r", type=float, help="cutoff/oscillator frequency ratio (default 10)")
    bath.add_argument("--omega0", type=float, help="oscillator frequency (default 1)")
    bath.add_argument("--nbar", type=float, help="bath thermal occupation (default 10)")
    common.add_argument("--tol", type=float, help="relative tolerance (default 1e-10)")
    common.add_argument("--units", choices=("omegac", "omega0"),
                        help="unit of --tau-wc/--tmax-wc values (default omegac)")
    common.add_argument("--threads", type=int, help="worker pool size for sweeps")
    common.add_argument("--out", help="output path (or stem for multi-file commands)")
    common.add_argument("--config", help="flat key = value config file; flags override it")

    parser = argparse.ArgumentParser(
        prog="shutterbath",
        description="Heating dynamics of a damped oscillator in a periodically "
                    "shuttered Ohmic reservoir",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("coeffs", parents=[common],
                        help="sample the decay coefficients to CSV")
    sp.add_argument("--tmax-wc", type=float, help="time window (default 10/omega_c)")
    sp.add_argument("--samples", type=int, help="number of grid points (default 501)")
    sp.set_defaults(handler=cmd_coeffs)

    sp = sub.add_parser("evolve", parents=[common],
                        help="heating trajectory, shuttered (--periods) or not")
    sp.add_argument("--tau-wc", type=float, help="shuttering period")
    sp.add_argument("--periods", type=int, help="number of periods (shuttered mode)")
    sp.add_argument("--samples-per-period", type=int,
                    help="intra-period samples (default 20)")
    sp.add_argument("--tmax-wc", type=float, help="window for the unshuttered mode")
    sp.add_argument("--samples", type=int, help="grid points, unshuttered mode (default 501)")
    sp.add_argument("--n0", type=float, help="initial occupation (default 0)")
    sp.add_argument("--plot", action="store_true", default=None,
                    help="render a PNG next to the CSV")
    sp.set_defaults(handler=cmd_evolve)

    sp = sub.add_parser("steady", parents=[common],
                        help="steady state and effective temperature for one period")
    sp.add_argument("--tau-wc", type=float, help="shuttering period", required=False)
    sp.set_defaults(handler=cmd_steady)

    sp = sub.add_parser("sweep", parents=[common],
                        help="steady state across a grid of shuttering periods")
    sp.add_argument("--tau-min-wc", type=float, help="grid start (default 0.3)")
    sp.add_argument("--tau-max-wc", type=float, help="grid end (default 50)")
    sp.add_argument("--points", type=int, help="grid size (default 60)")
    sp.add_argument("--spacing", choices=("log", "linear"), help="grid spacing (default log)")
    sp.add_argument("--plot", action="store_true", default=None)
    sp.set_defaults(handler=cmd_sweep)

    sp = sub.add_parser("zeno", parents=[common],
                        help="Zeno/anti-Zeno classification and crossover search")
    sp.add_argument("--tau-wc", type=float, help="shuttering period")
    sp.add_argument("--periods", type=int, help="number of periods to simulate")
    sp.add_argument("--k", type=int, help="periods inspected for the short-time class (default 3)")
    sp.add_argument("--plot", action="store_true", default=None)
    sp.set_defaults(handler=cmd_zeno)

    sp = sub.add_parser("oracle-check", parents=[common],
                        help="validate the analytic layer against the population oracle")
    sp.add_argument("--tau-wc", type=float, help="shuttering period (shuttered mode)")
    sp.add_argument("--periods", type=int, help="period count (shuttered mode)")
    sp.add_argument("--tmax-wc", type=float, help="window, unshuttered mode (default 50)")
    sp.add_argument("--samples", type=int, help="samples, unshuttered mode")
    sp.add_argument("--samples-per-period", type=int, help="samples per period")
    sp.add_argument("--truncation", type=int, help="Fock-space truncation (default auto)")
    sp.add_argument("--equivalence", action="store_true", default=None,
                    help="compare restarted vs averaged-rate descriptions instead")
    sp.set_defaults(handler=cmd_oracle_check)

    sp = sub.add_parser("figure", parents=[common],
                        help="one-command benchmark dataset presets")
    sp.add_argument("preset", choices=FIGURE_NAMES)
    sp.add_argument("--tau-wc", type=float, help="override the preset period")
    sp.add_argument("--periods", type=int, help="override the preset period count")
    sp.add_argument("--samples-per-period", type=int)
    sp.add_argument("--tmax-wc", type=float, help="override the preset window (2a/2b)")
    sp.add_argument("--tau-min-wc", type=float)
    sp.add_argument("--tau-max-wc", type=float)
    sp.add_argument("--points", type=int)
    sp.add_argument("--no-plot", action="store_true", help="skip the PNG")
    sp.set_defaults(handler=cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        opts = _resolve(args)
        if getattr(args, "no_plot", False):
            opts.plot = False
        if args.command == "figure":
            opts.preset = args.preset
        return args.handler(opts)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 4
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3


def cli_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli_entry()
