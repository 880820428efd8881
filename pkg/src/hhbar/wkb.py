"""Semiclassical near-threshold analysis for a -C6/R^6 tail.

The quantization function F(eps) gives the non-integer number of levels
between a bound state of dissociation energy eps and the threshold, so that
nu_th = nu + F(eps_nu).  F is linear in (d^2, D) once b and beta6 are fixed,
which turns the calibration of the two tail constants into a 2-column linear
least-squares problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import CONSTANTS

A_BAR_RATIO = 0.4779888
# Gamma(2/3) / (4 sqrt(pi) Gamma(7/6))
_G = math.gamma(2 / 3) / (4 * math.sqrt(math.pi) * math.gamma(7 / 6))

POLE_TOL = 1e-9

# rows nearest threshold; the reference nu_th values are read as truncated to
# two decimals, hence the half-step offset applied to the targets
DEFAULT_CALIBRATION_ROWS = (26, 27, 28, 29)
TRUNCATION_OFFSET = 0.005


class IncompleteParametersError(ValueError):
    """d or D was not supplied."""


class PoleError(ArithmeticError):
    """F(eps) is an integer: zero-energy resonance, a diverges."""


class CalibrationError(ArithmeticError):
    pass


def beta6(C6: float, M: float) -> float:
    if not (C6 > 0 and M > 0):
        raise ValueError("beta6 needs C6 > 0 and M > 0")
    return (2.0 * C6 * M) ** 0.25


@dataclass(frozen=True)
class TailParams:
    C6: float
    M: float
    d: float | None = None
    D: float | None = None

    def __post_init__(self):
        if not (self.C6 > 0 and self.M > 0):
            raise ValueError("C6 and M must be positive")

    @property
    def beta6(self) -> float:
        return beta6(self.C6, self.M)

    @property
    def b(self) -> float:
        return A_BAR_RATIO * self.beta6

    @property
    def a_bar(self) -> float:
        return self.b

    @property
    def complete(self) -> bool:
        return self.d is not None and self.D is not None

    @classmethod
    def from_beta6(cls, b6: float, M: float = CONSTANTS.mu_n, d=None, D=None) -> "TailParams":
        """Recover C6 from a quoted length scale: C6 = beta6^4 / (2M)."""
        return cls(b6**4 / (2.0 * M), M, d, D)

    def with_tail(self, d: float, D: float) -> "TailParams":
        return replace(self, d=d, D=D)


def _groups(eps, p: TailParams):
    """Basis terms of F: F = f0 + d^2 f_d2 + D f_D (all dimensionless)."""
    eps = np.asarray(eps, dtype=float)
    if np.any(eps < 0):
        raise ValueError("dissociation energy must be non-negative")
    kappa = np.sqrt(2.0 * p.M * eps)
    x = kappa * p.beta6
    x4 = x**4
    w = x4 / (1.0 + x4)
    with np.errstate(divide="ignore", invalid="ignore"):
        x23 = np.cbrt(x) ** 2
        f_D = np.where(x > 0, w / (2 * math.pi * x23), 0.0)
    f0 = 2 * p.b * kappa / (2 * math.pi * (1 + x4)) + w * (-0.125 + _G * x23)
    f_d2 = -(kappa**2) / (2 * math.pi * (1 + x4))
    return f0, f_d2, f_D


def quantization_function(eps, params: TailParams):
    if not params.complete:
        raise IncompleteParametersError("quantization function needs both d and D")
    f0, f_d2, f_D = _groups(eps, params)
    F = f0 + params.d**2 * f_d2 + params.D * f_D
    return float(F) if np.ndim(F) == 0 else F


def threshold_quantum_number(nu: int, eps_nu: float, params: TailParams) -> float:
    return nu + quantization_function(eps_nu, params)


def predicted_bound_count(nu: int, eps_nu: float, params: TailParams) -> int:
    return math.floor(threshold_quantum_number(nu, eps_nu, params))


def wkb_scattering_length(eps_last: float, params: TailParams) -> float:
    F = quantization_function(eps_last, params)
    if abs(F - round(F)) < POLE_TOL:
        raise PoleError(f"F = {F!r} is integral; scattering length diverges")
    return params.a_bar + params.b / math.tan(math.pi * F)


@dataclass(frozen=True)
class Calibration:
    params: TailParams
    rows: tuple
    residuals: np.ndarray  # nu + F - target on the calibration rows
    target_offset: float


def calibrate_tail_constants(rows, params: TailParams,
                             target_offset: float = 0.0) -> Calibration:
    """Least-squares (d, D) from rows of (nu, eps_nu, nu_th_target).

    Raises CalibrationError for fewer than four rows, a rank-deficient
    system, or a fit that needs d^2 < 0.
    """
    rows = [(int(n), float(e), float(t)) for n, e, t in rows]
    if len(rows) < 4:
        raise CalibrationError("calibration needs at least four rows")
    nus = np.array([r[0] for r in rows])
    eps = np.array([r[1] for r in rows])
    target = np.array([r[2] for r in rows]) + target_offset
    f0, f_d2, f_D = _groups(eps, params)
    A = np.column_stack([f_d2, f_D])
    y = target - nus - f0
    coef, _, rank, sv = np.linalg.lstsq(A, y, rcond=None)
    if rank < 2 or sv[-1] <= 1e-12 * sv[0]:
        raise CalibrationError("calibration system is rank deficient")
    d2, D = coef
    if d2 < 0:
        raise CalibrationError(f"fit requires d^2 = {d2:.6g} < 0; rows do not constrain a real d")
    fitted = params.with_tail(math.sqrt(d2), float(D))
    resid = A @ coef - y
    return Calibration(fitted, tuple(int(n) for n in nus), resid, target_offset)


def table4_rows(eps_by_nu: dict, params_bo: TailParams, params_sc: TailParams,
                eps_sc_by_nu: dict | None = None):
    """Rows (nu, nu_th_BO, nu_th_scaled) for each nu present in the inputs."""
    eps_sc_by_nu = eps_sc_by_nu or eps_by_nu
    out = []
    for nu in sorted(eps_by_nu):
        out.append((nu,
                    threshold_quantum_number(nu, eps_by_nu[nu], params_bo),
                    threshold_quantum_number(nu, eps_sc_by_nu[nu], params_sc)))
    return out
