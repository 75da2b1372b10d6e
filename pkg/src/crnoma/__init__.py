"""Sensing-throughput analysis for an energy-harvesting NOMA cognitive
radio uplink.

The library models a secondary network that senses a licensed channel
with an energy detector, harvests downlink power during the sensing slot,
and transmits uplink NOMA traffic in the remainder of the frame. It
computes the resulting throughput objectives, sweeps them over the
sensing time, and finds the optimal sensing time by golden-section search
cross-checked against a brute-force grid.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import ConfigError, DomainError, EvaluationError
from .statmath import (
    GOLDEN_RATIO,
    Bracket,
    OptimizationResult,
    Probability,
    SearchMethod,
    golden_section_max,
    grid_max,
    q,
    q_inv,
)
from .sensing import (
    DetectionOutcome,
    SensingParams,
    num_samples,
    pd_from_pf,
    pd_from_threshold,
    pf_from_pd,
    pf_from_threshold,
    simulate_detection,
    test_statistic,
    threshold_from_pd,
)
from .noma import (
    HarvestModel,
    NomaNetwork,
    NomaUser,
    harvested_energy,
    throughput_pu_absent,
    throughput_pu_present,
    uplink_transmit_power,
    user_snr,
)
from .throughput import (
    ObjectiveKind,
    PowerPolicy,
    ScenarioConfig,
    TrafficModel,
    interference_prob_imperfect,
    interference_prob_perfect,
    objective_value,
    r0,
    r0p,
    r1,
    r1pip,
)
from .optimize import (
    ObjectiveComparison,
    optimal_sensing_time,
    optimize_all,
    unimodality_precheck,
)
from .config import DEFAULT_SEED, default_scenario, load_config

__all__ = [
    "__version__",
    "KERNEL_BACKEND",
    "ConfigError",
    "DomainError",
    "EvaluationError",
    "GOLDEN_RATIO",
    "Bracket",
    "OptimizationResult",
    "Probability",
    "SearchMethod",
    "golden_section_max",
    "grid_max",
    "q",
    "q_inv",
    "DetectionOutcome",
    "SensingParams",
    "num_samples",
    "pd_from_pf",
    "pd_from_threshold",
    "pf_from_pd",
    "pf_from_threshold",
    "simulate_detection",
    "test_statistic",
    "threshold_from_pd",
    "HarvestModel",
    "NomaNetwork",
    "NomaUser",
    "harvested_energy",
    "throughput_pu_absent",
    "throughput_pu_present",
    "uplink_transmit_power",
    "user_snr",
    "ObjectiveKind",
    "PowerPolicy",
    "ScenarioConfig",
    "TrafficModel",
    "interference_prob_imperfect",
    "interference_prob_perfect",
    "objective_value",
    "r0",
    "r0p",
    "r1",
    "r1pip",
    "ObjectiveComparison",
    "optimal_sensing_time",
    "optimize_all",
    "unimodality_precheck",
    "DEFAULT_SEED",
    "default_scenario",
    "load_config",
]
