"""Run configuration with a single precedence chain.

Values resolve as: built-in defaults, then the JSON config file, then the
GEOACCESS_SEED environment variable (seed only), then explicit flag
overrides. The JSON file may contain exactly the RunConfig keys.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

from .accessibility import DECAY_FAMILIES, DEMAND_COLUMNS
from .errors import ValidationError

ENV_SEED = "GEOACCESS_SEED"

DEFAULT_PREVALENCE_COLUMNS = (
    "pct_diabetes",
    "pct_obesity",
    "pct_asthma",
    "pct_depression",
    "pct_hyperlipidemia",
    "pct_hypertension",
    "pct_heart_disease",
)

_SCHEMES = ("fixed_band", "knn")

__all__ = ["ENV_SEED", "DEFAULT_PREVALENCE_COLUMNS", "RunConfig", "load_config"]


@dataclass(frozen=True)
class RunConfig:
    catchment_miles: float = 15.0
    impedance: str = "gaussian"
    demand: str = "patients"
    weights_scheme: str = "fixed_band"
    band_miles: float = 15.0
    knn_k: int = 8
    permutations: int = 199
    seed: int = 42
    variance_target: float = 0.75
    fdr: bool = False
    min_neighbors: int = 8
    workers: int = 1
    poverty_column: str = "poverty_rate"
    prevalence_columns: tuple = DEFAULT_PREVALENCE_COLUMNS

    def __post_init__(self):
        positive = (
            ("catchment_miles", self.catchment_miles),
            ("band_miles", self.band_miles),
            ("knn_k", self.knn_k),
            ("permutations", self.permutations),
            ("variance_target", self.variance_target),
            ("min_neighbors", self.min_neighbors),
            ("workers", self.workers),
        )
        for name, value in positive:
            if not value > 0:
                raise ValidationError(f"config {name} must be positive, got {value!r}")
        if self.variance_target > 1.0:
            raise ValidationError(
                f"config variance_target must be in (0, 1], got {self.variance_target!r}"
            )
        if self.impedance not in DECAY_FAMILIES:
            raise ValidationError(f"config impedance must be one of {DECAY_FAMILIES}")
        if self.demand not in DEMAND_COLUMNS:
            raise ValidationError(f"config demand must be one of {DEMAND_COLUMNS}")
        if self.weights_scheme not in _SCHEMES:
            raise ValidationError(f"config weights_scheme must be one of {_SCHEMES}")
        if not isinstance(self.fdr, bool):
            raise ValidationError(f"config fdr must be a boolean, got {self.fdr!r}")


_FIELD_NAMES = tuple(f.name for f in dataclasses.fields(RunConfig))


def load_config(path=None, overrides=None, env=None) -> RunConfig:
    """Resolve a RunConfig from file, environment, and flag overrides.

    ``overrides`` maps field names to values; entries that are None are
    ignored so absent CLI flags never mask file values.
    """
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}: invalid JSON: {exc}")
        if not isinstance(raw, dict):
            raise ValidationError(f"{path}: config must be a JSON object")
        unknown = sorted(set(raw) - set(_FIELD_NAMES))
        if unknown:
            raise ValidationError(f"{path}: unknown config keys {unknown}")
        values.update(raw)
    if ENV_SEED in env:
        try:
            values["seed"] = int(env[ENV_SEED])
        except ValueError:
            raise ValidationError(f"{ENV_SEED} must be an integer, got {env[ENV_SEED]!r}")
    for name, value in (overrides or {}).items():
        if value is None:
            continue
        if name not in _FIELD_NAMES:
            raise ValidationError(f"unknown config override {name!r}")
        values[name] = value
    if "prevalence_columns" in values and not isinstance(values["prevalence_columns"], tuple):
        cols = values["prevalence_columns"]
        if not isinstance(cols, (list, tuple)) or not all(isinstance(c, str) for c in cols):
            raise ValidationError("config prevalence_columns must be a list of column names")
        values["prevalence_columns"] = tuple(cols)
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ValidationError(f"invalid config: {exc}")
