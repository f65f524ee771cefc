"""Runtime configuration with pinned default tolerances."""

from __future__ import annotations

import dataclasses
import json
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_TOLERANCES: dict[str, float] = {
    "norm": 1e-12,         # gate norm preservation
    "linearity": 1e-12,    # gate linearity residual
    "inner": 1e-12,        # inner-product algebra
    "amplitude": 1e-15,    # amplitude drift through inverse gate pairs
    "unitary_exact": 1e-9,
    "unitary_numeric": 1e-6,
    "integrator": 1e-6,    # numeric vs closed-form state distance
    "subsystem": 1e-9,
    "fidelity": 1e-9,      # closed-form fidelity at whole-shift times
    "bookkeeping": 1e-9,   # fidelity + leakage vs norm
}


@dataclass(frozen=True)
class Config:
    """Shared knobs: ring size, detection threshold, integrator step, bounds."""

    dim: int = 32
    epsilon: float = 1e-3
    dt: float = 0.005
    t_max: float = 1.5
    class_bound: int = 2
    tolerances: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 8 or self.dim % 2:
            raise ValueError(f"D must be an even integer >= 8, got {self.dim!r}")
        if not (0.0 < self.epsilon < 0.5):
            raise ValueError(f"epsilon must lie in (0, 0.5), got {self.epsilon!r}")
        if not (0.0 < self.dt <= 0.01):
            raise ValueError(f"dt must lie in (0, 0.01], got {self.dt!r}")
        if not (self.t_max > 0.0) or not math.isfinite(self.t_max):
            raise ValueError(f"t_max must be positive and finite, got {self.t_max!r}")
        if not isinstance(self.class_bound, int) or not (0 <= self.class_bound <= 3):
            raise ValueError(f"class_bound must be in 0..3, got {self.class_bound!r}")
        for name, value in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                raise ValueError(f"unknown tolerance {name!r}")
            if not (float(value) > 0.0):
                raise ValueError(f"tolerance {name!r} must be positive, got {value!r}")

    def tol(self, name: str) -> float:
        if name not in DEFAULT_TOLERANCES:
            raise KeyError(f"unknown tolerance {name!r}")
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))

    def with_overrides(self, **kwargs) -> Config:
        """Replace the given fields, skipping None values."""
        updates = {k: v for k, v in kwargs.items() if v is not None}
        return dataclasses.replace(self, **updates) if updates else self

    def to_json_dict(self) -> dict:
        return {
            "D": self.dim,
            "epsilon": self.epsilon,
            "dt": self.dt,
            "t_max": self.t_max,
            "class_bound": self.class_bound,
            "tolerances": {k: self.tol(k) for k in DEFAULT_TOLERANCES},
        }

    @staticmethod
    def from_json_dict(obj: object) -> Config:
        if not isinstance(obj, dict):
            raise ValueError("config document must be a JSON object")
        known = {"D": "dim", "epsilon": "epsilon", "dt": "dt", "t_max": "t_max",
                 "class_bound": "class_bound", "tolerances": "tolerances"}
        kwargs = {}
        for key, value in obj.items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            kwargs[known[key]] = value
        return Config(**kwargs)

    @staticmethod
    def from_file(path: str | Path) -> Config:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ValueError(f"cannot read config file {path!r}: {exc}") from exc
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {path!r} is not valid JSON: {exc}") from exc
        return Config.from_json_dict(obj)
