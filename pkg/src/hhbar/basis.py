"""Oscillating-Gaussian radial basis on a geometric exponent ladder.

g^c_n(R) = N R^l exp(-nu_n R^2) cos(a nu_n R^2)
g^s_n(R) = N R^l exp(-nu_n R^2) sin(a nu_n R^2)

with nu_n = 1 / r_n^2 and r_n running geometrically from r_min to r_max.
Functions are ordered cos_1, sin_1, cos_2, sin_2, ...
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

ALPHA_OSC = math.pi / 2


class Kind(str, enum.Enum):
    COS = "cos"
    SIN = "sin"


class DegenerateGridError(ValueError):
    pass


@dataclass(frozen=True)
class BasisSpec:
    n_max: int
    r_min: float
    r_max: float
    l: int = 0
    alpha_osc: float = ALPHA_OSC

    def __post_init__(self):
        if self.n_max < 2:
            raise DegenerateGridError("need at least two exponents (n_max >= 2)")
        if not 0 < self.r_min < self.r_max:
            raise ValueError("require 0 < r_min < r_max")
        if self.l < 0 or int(self.l) != self.l:
            raise ValueError("l must be a non-negative integer")

    @property
    def size(self) -> int:
        return 2 * self.n_max

    def radii(self) -> np.ndarray:
        n = np.arange(self.n_max)
        return self.r_min * (self.r_max / self.r_min) ** (n / (self.n_max - 1))

    def exponents(self) -> np.ndarray:
        return 1.0 / self.radii() ** 2


@dataclass(frozen=True)
class BasisFunction:
    kind: Kind
    nu: float
    l: int
    norm: float
    alpha_osc: float = ALPHA_OSC

    def __call__(self, R):
        return evaluate(self, R)


def normalization(kind: Kind, nu, l: int, alpha_osc: float = ALPHA_OSC, dtype=float):
    """Normalization constant giving unit norm under the measure R^2 dR.

    With p = l + 3/2, the squared integral is
    Gamma(p) / (4 (2 nu)^p) * (1 +/- Re[(1 - i a)^(-p)]).
    """
    from .integrals import moment

    kind = Kind(kind)
    nu = np.asarray(nu, dtype=dtype)
    m = 2 * l + 2
    plain = moment(m, 2 * nu)
    osc = moment(m, 2 * nu * (1 - 1j * np.asarray(alpha_osc, dtype=dtype))).real
    sq = 0.5 * (plain.real + osc) if kind is Kind.COS else 0.5 * (plain.real - osc)
    out = 1.0 / np.sqrt(sq)
    return out if out.ndim else out[()]


def build(spec: BasisSpec) -> list[BasisFunction]:
    """Normalized functions in interleaved (cos, sin) order."""
    out = []
    for nu in spec.exponents():
        for kind in (Kind.COS, Kind.SIN):
            norm = float(normalization(kind, nu, spec.l, spec.alpha_osc))
            out.append(BasisFunction(kind, float(nu), spec.l, norm, spec.alpha_osc))
    return out


def evaluate(f: BasisFunction, R):
    R = np.asarray(R, dtype=float)
    phase = f.alpha_osc * f.nu * R * R
    trig = np.cos(phase) if f.kind is Kind.COS else np.sin(phase)
    out = f.norm * R**f.l * np.exp(-f.nu * R * R) * trig
    return float(out) if out.ndim == 0 else out


def dump_rows(functions: list[BasisFunction]):
    """``(index, kind, nu, norm)`` rows for the basis CSV."""
    return [(i + 1, f.kind.value, f.nu, f.norm) for i, f in enumerate(functions)]
