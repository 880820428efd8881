"""s-wave scattering length from the lowest discretized continuum state.

Near E = 0 the reduced radial function u(R) = R phi(R) is linear outside the
interaction range, u ~ C (R - a).  A least-squares line over a fit window
realizes the tangent; its R-axis crossing is the scattering length.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import spectrum
from .config import RunConfig
from .constants import CONSTANTS, PhysicalConstants

log = logging.getLogger(__name__)

DEFAULT_WINDOW = (13.0, 16.0)
MIN_POINTS = 40
DEFAULT_POINTS = 61
SLOPE_TOL = 1e-8
# wavefunctions are sampled on [r_min, GRID_MAX]
GRID_MAX = 30.0


class IllPosedWindowError(ArithmeticError):
    """u(R) is flat on the window; the intercept is undefined."""


class WindowDomainError(ValueError):
    pass


@dataclass
class TangentEstimate:
    a: float
    window: tuple
    slope: float
    intercept: float
    fit_residual: float
    uncertainty: float = 0.0
    energy: float | None = None
    n_points: int = 0
    warning: str | None = None
    scan: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["window"] = list(self.window)
        return out


def _check_window(window, r_lo=0.0, r_hi=GRID_MAX):
    R1, R2 = (float(w) for w in window)
    if not R1 < R2:
        raise WindowDomainError(f"window [{R1}, {R2}] must have R1 < R2")
    if R1 <= r_lo or R2 > r_hi:
        raise WindowDomainError(f"window [{R1}, {R2}] outside sampling grid ({r_lo}, {r_hi}]")
    return R1, R2


def fit_line(R, u) -> TangentEstimate:
    """Least-squares line through samples; a = -intercept/slope."""
    R = np.asarray(R, dtype=float)
    u = np.asarray(u, dtype=float)
    if R.size < MIN_POINTS:
        raise WindowDomainError(f"need at least {MIN_POINTS} samples, got {R.size}")
    A = np.column_stack([R, np.ones_like(R)])
    (slope, intercept), *_ = np.linalg.lstsq(A, u, rcond=None)
    scale = np.sqrt(np.mean(u**2))
    width = R.max() - R.min()
    if scale == 0 or abs(slope) * width <= SLOPE_TOL * scale:
        raise IllPosedWindowError("fitted slope vanishes on the window")
    resid = float(np.sqrt(np.mean((A @ [slope, intercept] - u) ** 2)))
    return TangentEstimate(a=float(-intercept / slope), window=(float(R.min()), float(R.max())),
                           slope=float(slope), intercept=float(intercept), fit_residual=resid,
                           n_points=int(R.size))


def window_samples(result: spectrum.SpectrumResult, window=DEFAULT_WINDOW,
                   n_points: int = DEFAULT_POINTS):
    R1, R2 = _check_window(window, result.basis.r_min)
    R = np.linspace(R1, R2, n_points)
    state = result.first_continuum()
    _, u = spectrum.radial_wavefunction(result, state.nu_index, R)
    return R, u, state


def tangent_scattering_length(result: spectrum.SpectrumResult, window=DEFAULT_WINDOW,
                              n_points: int = DEFAULT_POINTS) -> TangentEstimate:
    if result.l != 0:
        raise ValueError("scattering length is defined for l = 0")
    if n_points < MIN_POINTS:
        raise WindowDomainError(f"need at least {MIN_POINTS} grid points")
    R, u, state = window_samples(result, window, n_points)
    est = fit_line(R, u)
    est.energy = state.energy - result.threshold
    return est


def _spread(values):
    values = np.asarray(values, dtype=float)
    return 0.5 * float(values.max() - values.min())


def uncertainty_scan(reference: RunConfig, r_max_values=(18.0, 20.0, 22.0),
                     n_max_values=(100, 120), windows=None, workers: int = 1,
                     constants: PhysicalConstants = CONSTANTS) -> TangentEstimate:
    """Reference-basis estimate with half-spread uncertainty over a basis scan.

    ``windows`` (optional) adds fit windows to the scan; each point of the scan
    is recorded in ``scan`` as (n_max, r_max, window, a).
    """
    window = (reference.window_lo, reference.window_hi)
    windows = [tuple(w) for w in windows] if windows else [window]
    ref_result = spectrum.run(reference, constants)
    central = tangent_scattering_length(ref_result, window)

    jobs = [(int(n), float(r)) for n in n_max_values for r in r_max_values]

    def one(job):
        n, r = job
        if (n, r) == (reference.n_max, reference.r_max):
            res = ref_result
        else:
            res = spectrum.run(reference.with_(n_max=n, r_max=r), constants)
        return [(n, r, w, tangent_scattering_length(res, w).a) for w in windows]

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            points = [p for chunk in ex.map(one, jobs) for p in chunk]
    else:
        points = [p for job in jobs for p in one(job)]

    central.scan = points
    if len(points) < 3:
        central.uncertainty = _spread([p[3] for p in points]) if len(points) > 1 else 0.0
        central.warning = f"only {len(points)} scan point(s); uncertainty not meaningful"
        log.warning(central.warning)
    else:
        central.uncertainty = _spread([p[3] for p in points])
    return central


def csv_rows(result: spectrum.SpectrumResult, est: TangentEstimate, R_grid=None):
    """Rows (R, u, line) for plotting u(R) against the fitted tangent."""
    if R_grid is None:
        R_grid = np.linspace(0.5, min(GRID_MAX, result.basis.r_max * 1.25), 400)
    state = result.first_continuum()
    _, u = spectrum.radial_wavefunction(result, state.nu_index, R_grid)
    line = est.slope * np.asarray(R_grid) + est.intercept
    return [(float(r), float(x), float(y)) for r, x, y in zip(R_grid, u, line)]
