"""Correlation between RIS-aided cascade channels sharing a BS-RIS link."""

from .analytics import (
    approx_mean_sq_corr,
    asymptotic_corr,
    mean_corr_upper,
    predict,
)
from .channel import SystemParams, cascade, sample_bs_ris, sample_ris_ue
from .experiments import ExperimentConfig, PhaseMode, Sweep, run_point, run_sweep
from .geometry import ArrayGeometry
from .numerics import RandomStream

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "ExperimentConfig",
    "PhaseMode",
    "RandomStream",
    "Sweep",
    "SystemParams",
    "approx_mean_sq_corr",
    "asymptotic_corr",
    "cascade",
    "mean_corr_upper",
    "predict",
    "run_point",
    "run_sweep",
    "sample_bs_ris",
    "sample_ris_ue",
]
