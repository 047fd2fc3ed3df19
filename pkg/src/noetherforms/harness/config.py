"""Suite configuration (JSON schema version 1)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from ..errors import ConfigError
from ..noether import MODES

SCHEMA_VERSION = 1
FORMATS = ("json", "text")

DEFAULT_MODES = {
    "maxwell": ("pure", "fixed-background", "dynamical"),
    "premetric-ed": ("pure", "fixed-background", "dynamical"),
    "coframe-gr": ("dynamical",),
    "chern-simons": ("pure",),
}


@dataclass(frozen=True)
class SuiteConfig:
    model: str
    n: int | None = None
    p: int | None = None
    seed: int = 0
    cases: int = 10
    degree: int = 2
    coeff: int = 9
    modes: tuple = ()
    format: str = "json"
    workers: int = 1
    chi: tuple | None = None  # 6x6 rational matrix for premetric-ed
    timing: bool = False

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if self.chi is not None:
            object.__setattr__(
                self, "chi", tuple(tuple(Fraction(x) for x in row) for row in self.chi)
            )
        if not isinstance(self.cases, int) or self.cases < 1:
            raise ConfigError("cases must be a positive integer")
        if self.degree < 0 or self.coeff < 1:
            raise ConfigError("polynomial bounds must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        for m in self.modes:
            if m not in MODES:
                raise ConfigError(f"unknown mode {m!r}")
        if self.chi is not None and (len(self.chi) != 6 or any(len(r) != 6 for r in self.chi)):
            raise ConfigError("chi must be a 6x6 matrix")

    @property
    def effective_modes(self) -> tuple:
        return self.modes or DEFAULT_MODES.get(self.model, ("dynamical",))

    def model_params(self) -> dict:
        out = {}
        if self.model == "maxwell":
            out["n"] = 4 if self.n is None else self.n
            out["p"] = 1 if self.p is None else self.p
        return out

    def to_dict(self) -> dict:
        d = asdict(self)
        d["modes"] = list(self.modes)
        if self.chi is not None:
            d["chi"] = [[str(x) for x in row] for row in self.chi]
        return {"version": SCHEMA_VERSION, **d}

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteConfig":
        data = dict(data)
        version = data.pop("version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported config version {version}")
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
        if "model" not in data:
            raise ConfigError("config needs a model name")
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path) -> "SuiteConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(data)

    def replace(self, **changes) -> "SuiteConfig":
        d = asdict(self)
        d.update({k: v for k, v in changes.items() if v is not None})
        return SuiteConfig(**d)
