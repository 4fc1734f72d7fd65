"""Experiment configuration: one JSON document, one dataclass, strict keys.

Every JSON key maps one-to-one to an ExperimentConfig field; unknown keys
are an error so typos in sweep definitions surface immediately instead of
running a default nobody asked for.
"""

import dataclasses
import json
from dataclasses import dataclass, field

EXPERIMENTS = (
    "dynamics",
    "decay-times",
    "level-ratio",
    "pairing",
    "pairing-vs-l",
    "correlations",
    "imbalance-dist",
)

# experiments whose statistics follow the spectral-ensemble size convention
_SPECTRAL_LIKE = {"dynamics", "decay-times", "level-ratio", "pairing", "pairing-vs-l"}


def default_n_disorder(experiment, L):
    """Ensemble-size conventions: 20480*2^(1-L/2), correlations 5120*2^(1-L/2)."""
    if experiment == "imbalance-dist":
        return 0
    base = 20480 if experiment in _SPECTRAL_LIKE else 5120
    return max(1, int(base * 2.0 ** (1 - L // 2)))


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment description; list fields define the sweep grid."""

    experiment: str
    L: tuple = (8,)
    s: float = 0.5
    J: tuple = (0.0,)
    epsilon: tuple = (0.0,)
    alpha: tuple = (0.5,)
    V: float = 3.0
    h: float = 16.0
    n_disorder: int | None = None  # None: per-experiment size convention
    master_seed: int = 0
    initial_state: str = "neel"
    t_max: int = 1000  # dynamics: last sampled period
    t_stride: int = 1  # dynamics: sampling stride
    horizon: int = 10_000_000  # decay-times: censoring horizon
    d_values: tuple = (2, 3)  # imbalance-dist: local dimensions
    out: str = "runs"
    workers: int | None = None
    dim_cap: int = 16000
    keep_raw: bool = False

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}"
            )
        for name in ("L", "J", "epsilon", "alpha", "d_values"):
            value = getattr(self, name)
            if not isinstance(value, tuple):
                value = tuple(value) if isinstance(value, (list, tuple)) else (value,)
                object.__setattr__(self, name, value)
            if not value:
                raise ValueError(f"{name} must contain at least one value")
        object.__setattr__(self, "L", tuple(int(x) for x in self.L))
        object.__setattr__(self, "J", tuple(float(x) for x in self.J))
        object.__setattr__(self, "epsilon", tuple(float(x) for x in self.epsilon))
        object.__setattr__(self, "alpha", tuple(float(x) for x in self.alpha))
        object.__setattr__(self, "d_values", tuple(int(x) for x in self.d_values))
        if any(x <= 0 or x % 2 for x in self.L):
            raise ValueError(f"every L must be even and positive, got {self.L}")
        if self.s not in (0.5, 1, 1.0):
            raise ValueError(f"s must be 1/2 or 1, got {self.s}")
        if self.n_disorder is not None and self.n_disorder < 1:
            raise ValueError("n_disorder must be at least 1 when given")
        if self.t_max < 1 or self.t_stride < 1:
            raise ValueError("t_max and t_stride must be positive")
        if self.horizon < 1:
            raise ValueError("horizon must be positive")
        if any(d < 2 for d in self.d_values):
            raise ValueError("d_values entries must be at least 2")
        if self.dim_cap < 2:
            raise ValueError("dim_cap too small to hold any sector")

    def ensemble_size(self, L):
        if self.n_disorder is not None:
            return self.n_disorder
        return default_n_disorder(self.experiment, L)

    def as_dict(self):
        return dataclasses.asdict(self)


_FIELD_NAMES = {f.name for f in dataclasses.fields(ExperimentConfig)}


def _reject_unknown(keys, source):
    unknown = sorted(set(keys) - _FIELD_NAMES)
    if unknown:
        raise ValueError(
            f"unknown config key(s) in {source}: {', '.join(unknown)}; "
            f"valid keys: {', '.join(sorted(_FIELD_NAMES))}"
        )


def load_config(path=None, overrides=None, experiment=None):
    """Build an ExperimentConfig from a JSON file plus override mapping.

    Overrides win over the file; `experiment` (from the CLI subcommand)
    wins over both.  Unknown keys in either source are an error.
    """
    merged = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as err:
                raise ValueError(f"config file {path} is not valid JSON: {err}") from None
        if not isinstance(data, dict):
            raise ValueError(f"config file {path} must hold a JSON object")
        _reject_unknown(data.keys(), path)
        merged.update(data)
    if overrides:
        overrides = {k: v for k, v in overrides.items() if v is not None}
        _reject_unknown(overrides.keys(), "command-line overrides")
        merged.update(overrides)
    if experiment is not None:
        merged["experiment"] = experiment
    if "experiment" not in merged:
        raise ValueError("no experiment selected")
    return ExperimentConfig(**merged)
