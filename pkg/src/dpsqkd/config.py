"""Simulation configuration: defaults, file loading, validation."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .entropy import OVERLAP_EXPONENTS
from .errors import ConfigError

_MAX_SEED = 2**64 - 1


@dataclass
class SimulationConfig:
    """Knobs of one Monte Carlo run / key-rate evaluation.

    ``seed`` is the 64-bit master seed; every random stream in a run is
    derived from it, so equal configs give bit-identical results.
    """

    n_pulses: int = 50
    n_blocks: int = 10_000
    alpha: float = 0.338
    eta: float = 1.0
    seed: int = 12345
    overlap_convention: str = "paper"
    publish_fraction: float = 0.1

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if int(self.n_pulses) != self.n_pulses or self.n_pulses < 2:
            raise ConfigError(f"n_pulses must be an integer >= 2, got {self.n_pulses!r}")
        if int(self.n_blocks) != self.n_blocks or self.n_blocks < 1:
            raise ConfigError(f"n_blocks must be an integer >= 1, got {self.n_blocks!r}")
        if not self.alpha >= 0.0:
            raise ConfigError(f"alpha must be >= 0, got {self.alpha!r}")
        if not 0.0 <= self.eta <= 1.0:
            raise ConfigError(f"eta must lie in [0, 1], got {self.eta!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed <= _MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.overlap_convention not in OVERLAP_EXPONENTS:
            raise ConfigError(
                f"overlap_convention must be one of {sorted(OVERLAP_EXPONENTS)}, "
                f"got {self.overlap_convention!r}"
            )
        if not 0.0 < self.publish_fraction <= 1.0:
            raise ConfigError(
                f"publish_fraction must lie in (0, 1], got {self.publish_fraction!r}"
            )
        self.n_pulses = int(self.n_pulses)
        self.n_blocks = int(self.n_blocks)
        self.seed = int(self.seed)

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in dataclasses.fields(cls))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "SimulationConfig":
        unknown = set(mapping) - set(cls.field_names())
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            return cls(**mapping)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "SimulationConfig":
        """Load a flat JSON object with (a subset of) the config fields."""
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config file {path} must hold a flat JSON object")
        return cls.from_mapping(raw)

    def replace(self, **overrides: Any) -> "SimulationConfig":
        """Copy with the given fields overridden (None values are ignored)."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)
