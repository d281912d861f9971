"""Quantum Brownian motion of a damped oscillator in a shuttered Ohmic bath.

Periodically switching an engineered reservoir off and on resets the
system-bath correlations, forcing the oscillator to relive its non-Markovian
transient every period.  This package evaluates the resulting heating
dynamics in closed form, classifies Zeno versus anti-Zeno behavior, locates
the dynamical steady state with its above-bath effective temperature, and
validates everything against a brute-force Fock-basis population integrator.
"""

from .bath import (
    DEFAULT_TOL,
    AveragedRates,
    BathParams,
    CoefficientTrace,
    MarkovianRates,
    averaged_rates,
    coefficient_trace,
    coth,
    damped_diffusion_integral,
    decay_exponent,
    diffusion_coefficient,
    dissipation_coefficient,
    integrated_diffusion,
    integrated_dissipation,
    markovian_rates,
    spectral_density,
    spectral_distribution,
)
from .dynamics import (
    PeriodMap,
    ShutterSchedule,
    Trajectory,
    evolve_shuttered,
    evolve_unshuttered,
    heating_stroboscopic,
    heating_unshuttered,
    period_map,
)
from .errors import (
    ConvergenceError,
    DomainError,
    ModelValidityWarning,
    TruncationError,
)
from .oracle import (
    ComparisonTable,
    ConstantRates,
    EquivalenceReport,
    OracleRun,
    PopulationState,
    compare_shuttered,
    compare_unshuttered,
    geometric_populations,
    nonselective_measurement_equivalence,
    simulate_populations,
    thermal_deviation,
)
from .steady import (
    EffectiveTemperature,
    SteadyStateResult,
    effective_temperature,
    steady_state,
    steady_state_approx,
    steady_state_from_integrals,
    sweep_tau,
)
from .zeno import (
    DiffTrace,
    ZenoClass,
    ZenoReport,
    asymptotic_class,
    classify_short_time,
    crossover_time,
    stroboscopic_comparison,
    zeno_report,
)

__version__ = "0.1.0"

__all__ = [
    "AveragedRates",
    "BathParams",
    "CoefficientTrace",
    "ComparisonTable",
    "ConstantRates",
    "ConvergenceError",
    "DEFAULT_TOL",
    "DiffTrace",
    "DomainError",
    "EffectiveTemperature",
    "EquivalenceReport",
    "MarkovianRates",
    "ModelValidityWarning",
    "OracleRun",
    "PeriodMap",
    "PopulationState",
    "ShutterSchedule",
    "SteadyStateResult",
    "Trajectory",
    "TruncationError",
    "ZenoClass",
    "ZenoReport",
    "asymptotic_class",
    "averaged_rates",
    "classify_short_time",
    "coefficient_trace",
    "compare_shuttered",
    "compare_unshuttered",
    "coth",
    "crossover_time",
    "damped_diffusion_integral",
    "decay_exponent",
    "diffusion_coefficient",
    "dissipation_coefficient",
    "effective_temperature",
    "evolve_shuttered",
    "evolve_unshuttered",
    "geometric_populations",
    "heating_stroboscopic",
    "heating_unshuttered",
    "integrated_diffusion",
    "integrated_dissipation",
    "markovian_rates",
    "nonselective_measurement_equivalence",
    "period_map",
    "simulate_populations",
    "spectral_density",
    "spectral_distribution",
    "steady_state",
    "steady_state_approx",
    "steady_state_from_integrals",
    "stroboscopic_comparison",
    "sweep_tau",
    "thermal_deviation",
    "zeno_report",
]
