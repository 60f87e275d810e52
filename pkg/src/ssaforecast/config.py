"""Run configuration: one flat JSON file of typed keys, strictly validated.

Unknown keys are rejected; individual keys may be overridden from the command
line with ``--set key=value`` and every override is recorded in the config
echo embedded in output files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import BadFraction, ConfigError

_SCHEMA: dict[str, type] = {
    "input_csv": str,
    "time_column": str,
    "value_column": str,
    "window": int,
    "embedding": int,
    "hidden_units": int,
    "pc_step": int,
    "stage_epochs": int,
    "stage_lr": float,
    "stage_momentum": float,
    "patience": int,
    "validation_fraction": float,
    "seed": int,
    "horizon": int,
    "seeds": list,
    "compare_horizon": int,
    "output_dir": str,
}


@dataclass(frozen=True)
class RunConfig:
    input_csv: str = ""
    time_column: str = "time"
    value_column: str = "value"
    window: int = 35
    embedding: int = 5
    hidden_units: int = 10
    pc_step: int = 2
    stage_epochs: int = 500
    stage_lr: float = 0.05
    stage_momentum: float = 0.9
    patience: int = 200
    validation_fraction: float = 0.10
    seed: int = 0
    horizon: int = 72
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9)
    compare_horizon: int = 50
    output_dir: str = "out"

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        if self.window < 1:
            raise ConfigError("window must be at least 1")
        if self.embedding < 1:
            raise ConfigError("embedding must be at least 1")
        if self.hidden_units < 1:
            raise ConfigError("hidden_units must be at least 1")
        if self.pc_step < 1:
            raise ConfigError("pc_step must be at least 1")
        if self.stage_epochs < 1:
            raise ConfigError("stage_epochs must be at least 1")
        if self.stage_lr <= 0.0:
            raise ConfigError("stage_lr must be positive")
        if not 0.0 <= self.stage_momentum < 1.0:
            raise ConfigError("stage_momentum must lie in [0, 1)")
        if self.patience < 0:
            raise ConfigError("patience must be non-negative (0 disables early stopping)")
        if not 0.0 < self.validation_fraction < 1.0:
            raise BadFraction(
                f"validation_fraction must lie in (0, 1), got {self.validation_fraction}"
            )
        if self.horizon < 1:
            raise ConfigError("horizon must be at least 1")
        if self.compare_horizon < 1:
            raise ConfigError("compare_horizon must be at least 1")
        if not self.seeds:
            raise ConfigError("seeds must be non-empty")

    @property
    def early_stop_patience(self) -> int | None:
        return self.patience if self.patience > 0 else None

    def echo(self, overrides: dict | None = None) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["seeds"] = list(self.seeds)
        out["overrides"] = dict(overrides or {})
        return out


def _coerce(key: str, value, expected: type):
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if expected is list:
        if not isinstance(value, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in value
        ):
            raise ConfigError(f"key {key!r} must be a list of integers")
        return value
    if not isinstance(value, expected) or isinstance(value, bool) and expected is not bool:
        raise ConfigError(f"key {key!r} must be of type {expected.__name__}")
    return value


def _parse_override(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise ConfigError(f"override {text!r} is not of the form key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    if key not in _SCHEMA:
        raise ConfigError(f"unknown config key {key!r}")
    expected = _SCHEMA[key]
    try:
        if expected is str:
            return key, raw
        if expected is int:
            return key, int(raw)
        if expected is float:
            return key, float(raw)
        if expected is list:
            return key, [int(v) for v in raw.split(",") if v.strip() != ""]
    except ValueError:
        raise ConfigError(f"cannot parse override value {raw!r} for key {key!r}") from None
    raise ConfigError(f"unsupported override type for key {key!r}")


def load_config(path, overrides: list[str] | None = None) -> tuple[RunConfig, dict]:
    """Parse the config file, apply overrides, validate, and return both the
    config and its echo dict (the merged mapping plus the overrides used)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ConfigError("config file must contain a JSON object")
    for key in payload:
        if key not in _SCHEMA:
            raise ConfigError(f"unknown config key {key!r}")
    values = {key: _coerce(key, value, _SCHEMA[key]) for key, value in payload.items()}
    applied: dict[str, object] = {}
    for text in overrides or []:
        key, value = _parse_override(text)
        values[key] = value
        applied[key] = value
    config = RunConfig(**values)
    return config, config.echo(applied)
