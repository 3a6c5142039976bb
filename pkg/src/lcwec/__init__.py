"""Simulation and analysis of an LC-tuned point-absorber wave energy converter."""

from .frequency import (
    FrequencyResponse,
    OptimalLoad,
    SteadyStateReport,
    frequency_response,
    optimal_load,
    steady_state,
)
from .model import (
    ElectricInduced,
    GeneratorParams,
    MechanicalParams,
    ParameterError,
    RlcLoad,
    WaveForcing,
    check_generator,
    closed_loop_coefficients,
    electric_induced,
    load_from_induced,
)
from .simulate import (
    IntegrationError,
    SimConfig,
    SimTrace,
    TraceTooShortError,
    average_powers,
    harmonic_fit,
    settling_time,
    simulate,
)
from .sweep import Mode, SweepRow, sweep, sweep_oracle_check
from .tuning import Rule, TuningDecision, natural_frequency, resonance_residual, tune

__version__ = "0.1.0"
