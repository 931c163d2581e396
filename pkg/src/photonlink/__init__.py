"""Efficiency limits and receiver modelling for photon-starved optical links."""

from .capacity import (
    PhotonNumbers,
    g,
    holevo_capacity,
    holevo_pie_asymptote,
    pie,
    shannon_capacity,
    shannon_pie_asymptote,
)
from .linkbudget import (
    CODATA_CONSTANTS,
    DEFAULT_CONSTANTS,
    Constants,
    LinkConfigError,
    LinkParams,
    channel_transmission,
    load_link_params,
    noise_power_watts,
    rate_vs_distance,
    received_photon_number,
    transmitter_peak_power,
)
from .modulation import (
    MutualInfoResult,
    binary_entropy,
    ook_mi_per_bin,
    ppm_mi_enumeration_oracle,
    ppm_mi_per_bin,
)
from .noise import ClickProbabilities, NoiseModel, click_probs, gaussian, poissonian
from .optimize import ModulationOptimum, SweepRow, optimize_M, sweep_pie
from .receiver import (
    FieldPattern,
    ReceiverConfig,
    apply_module,
    apply_receiver,
    concentration_efficiency,
    detect_pattern,
    load_pattern,
    make_pattern,
    save_pattern,
)

__version__ = "0.1.0"

__all__ = [
    "PhotonNumbers",
    "g",
    "shannon_capacity",
    "holevo_capacity",
    "pie",
    "holevo_pie_asymptote",
    "shannon_pie_asymptote",
    "NoiseModel",
    "ClickProbabilities",
    "click_probs",
    "poissonian",
    "gaussian",
    "MutualInfoResult",
    "binary_entropy",
    "ppm_mi_per_bin",
    "ppm_mi_enumeration_oracle",
    "ook_mi_per_bin",
    "ModulationOptimum",
    "SweepRow",
    "optimize_M",
    "sweep_pie",
    "Constants",
    "DEFAULT_CONSTANTS",
    "CODATA_CONSTANTS",
    "LinkParams",
    "LinkConfigError",
    "load_link_params",
    "channel_transmission",
    "received_photon_number",
    "noise_power_watts",
    "transmitter_peak_power",
    "rate_vs_distance",
    "FieldPattern",
    "ReceiverConfig",
    "apply_module",
    "apply_receiver",
    "make_pattern",
    "detect_pattern",
    "concentration_efficiency",
    "save_pattern",
    "load_pattern",
    "__version__",
]
