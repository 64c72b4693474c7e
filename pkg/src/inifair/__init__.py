"""Multi-numerology CP-OFDM INI simulation and edge-fairness scheduling."""
from .analysis import CdfCurve, SirReport, empirical_cdf, estimate_sir, max_cdf_distance, per_ue_sir
from .experiments import (
    ExperimentConfig,
    emit_csv,
    load_config,
    preset,
    read_cdf_csv,
    run_case,
    run_cdf_experiment,
)
from .numerology import (
    AllocationError,
    ConfigurationError,
    Numerology,
    SpectrumAllocation,
    UeProfile,
    build_allocation,
    make_numerology,
)
from .ofdm import BasebandSignal, DimensionError, SymbolGrid, compose, demodulate, synthesize
from .scheduler import (
    CandidateSet,
    PairSelection,
    ScheduleDecision,
    build_candidates,
    power_offset,
    schedule_algo1,
    schedule_algo2,
    schedule_random,
)

__version__ = "0.1.0"
