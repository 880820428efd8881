"""Declarative run configuration shared by the library and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .basis import ALPHA_OSC, BasisSpec
from .eigensolver import ConditioningPolicy
from .potential import Flavor

COMMANDS = ("potential", "spectrum", "table2", "table3", "table4", "table5", "scatter", "wkb", "scan", "basis")


class ConfigError(ValueError):
    """Invalid configuration; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class RunConfig:
    command: str = "spectrum"
    flavor: Flavor = Flavor.BO
    l: int = 0
    n_max: int = 120
    r_min: float = 3e-5
    r_max: float = 20.0
    alpha_osc: float = ALPHA_OSC
    tau: float = 1e-12
    extended: bool = True
    window_lo: float = 13.0
    window_hi: float = 16.0
    d: float | None = None
    D: float | None = None
    params: str | None = None
    output: str | None = None
    format: str = "csv"
    extra: dict = field(default_factory=dict, compare=False)

    def basis_spec(self) -> BasisSpec:
        return BasisSpec(self.n_max, self.r_min, self.r_max, self.l, self.alpha_osc)

    def policy(self) -> ConditioningPolicy:
        return ConditioningPolicy(tau=self.tau, extended=self.extended)

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError("command", f"unknown command {self.command!r}")
        if self.l < 0:
            raise ConfigError("l", "must be >= 0")
        if self.n_max < 2:
            raise ConfigError("n_max", "must be >= 2")
        if not (self.r_min > 0 and self.r_max > self.r_min):
            raise ConfigError("r_max" if self.r_min > 0 else "r_min", "require 0 < r_min < r_max")
        if not (self.tau >= 0 and math.isfinite(self.tau)):
            raise ConfigError("tau", "must be a finite non-negative number")
        if not self.window_hi > self.window_lo > 0:
            raise ConfigError("window_hi", "require 0 < window_lo < window_hi")
        if (self.d is None) != (self.D is None):
            raise ConfigError("D" if self.D is None else "d", "d and D must be given together")
        if self.d is not None and self.d < 0:
            raise ConfigError("d", "must be >= 0")
        if self.format not in ("csv", "json"):
            raise ConfigError("format", "must be csv or json")
        if self.params is not None and not Path(self.params).is_file():
            raise ConfigError("params", f"no such file {self.params}")
        if self.output is not None:
            parent = Path(self.output).resolve().parent
            if not parent.is_dir():
                raise ConfigError("output", f"directory {parent} does not exist")
        return self

    def echo(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "extra":
                continue
            v = getattr(self, f.name)
            out[f.name] = v.value if isinstance(v, Flavor) else v
        out.update(self.extra)
        return out


_KEY_TYPES = {
    "flavor": Flavor.parse,
    "l": int,
    "n_max": int,
    "r_min": float,
    "r_max": float,
    "alpha_osc": float,
    "tau": float,
    "window_lo": float,
    "window_hi": float,
    "d": float,
    "D": float,
    "params": str,
    "output": str,
    "format": str,
    "extended": lambda s: str(s).strip().lower() in ("1", "true", "yes", "on"),
}


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines into typed values (unknown keys rejected)."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}", "expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEY_TYPES:
            raise ConfigError(key, f"unknown key in {source}:{lineno}")
        try:
            out[key] = _KEY_TYPES[key](value)
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None
    return out


def load_config_file(path: "str | Path") -> dict:
    path = Path(path)
    return parse_config_text(path.read_text(), str(path))
