"""Experiment orchestration: config, deterministic sweeps, CSV + figure output."""

from .config import EXPERIMENTS, ExperimentConfig, default_n_disorder, load_config
from .runner import AggregateResult, run_experiment
from .figures import emit_figure_data

__all__ = [
    "EXPERIMENTS",
    "ExperimentConfig",
    "default_n_disorder",
    "load_config",
    "AggregateResult",
    "run_experiment",
    "emit_figure_data",
]
