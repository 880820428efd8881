"""Analytic fitted H-Hbar potentials and their reference asymptotic forms.

Both fits share the form

    V(R) = E_inf + (E_sr - E_inf - 1/R) exp(-beta R^2)
           + sum_{n=1..6} sum_{k=0..4} A_nk R^k exp(-alpha_n R^2)

with E_sr = E1_Ps for the Born-Oppenheimer curve and mu * E1_Ps for the
mass-scaled leptonic curve.  Everything here is expressed as a flat list of
``(coef, power, exponent)`` triples meaning ``coef * R**power * exp(-exponent * R**2)``
so that evaluation, differentiation and matrix elements share one code path.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .constants import CONSTANTS, PhysicalConstants


class Flavor(str, enum.Enum):
    BO = "bo"
    MASS_SCALED = "scaled"

    @classmethod
    def parse(cls, value: "str | Flavor") -> "Flavor":
        if isinstance(value, Flavor):
            return value
        key = str(value).strip().lower()
        aliases = {
            "bo": cls.BO,
            "born-oppenheimer": cls.BO,
            "scaled": cls.MASS_SCALED,
            "mass-scaled": cls.MASS_SCALED,
            "massscaled": cls.MASS_SCALED,
            "lep": cls.MASS_SCALED,
        }
        if key not in aliases:
            raise ValueError(f"unknown potential flavor {value!r}")
        return aliases[key]


# Fit parameters, verbatim.  Row n holds A_n0..A_n4; A_60 is absent and is
# completed from the constraint sum_n A_n0 = 0.
_TABLE = {
    Flavor.BO: {
        "A": [
            ["-19.8582635505679", "67.6269717956708", "-20.0575886039098", "1.6436298797648", "-0.0417677179701"],
            ["57.5162155781683", "9.3918281802097", "3.0569545228764", "-0.2521821480278", "0.0965988366924"],
            ["4.7043278292101", "-16.1993647293737", "23.4284275566323", "-14.9456597423665", "3.8997649015388"],
            ["-19.9771658686913", "-173.8431212019852", "39.0038819732993", "-4.9839482825694", "0.2098970274357"],
            ["-22.3850547348492", "106.8813949154074", "-24.8069885152175", "2.2667291349955", "-0.0258580270297"],
            [None, "0.0000097266439", "-0.0000006275304", "0.0000000184890", "-0.0000000002113"],
        ],
        "alpha": ["0.0897852714851", "0.2268196733512", "2.2437975957692",
                  "0.1412060702801", "0.1048123413141", "0.0068068098389"],
        "beta": "6.1520725018366",
    },
    Flavor.MASS_SCALED: {
        "A": [
            ["-20.1369672678805", "44.1781330016383", "-14.6255427563730", "1.2854178363453", "-0.0344425997356"],
            ["57.6405552715681", "-24.8917421281046", "8.8916405222450", "-1.4152945078081", "0.1428155629355"],
            ["5.4110168738119", "-17.2109690438145", "24.7666406025529", "-15.7590990169304", "4.1982517062010"],
            ["-20.2530003255519", "-131.5359580062383", "36.6202418042846", "2.3956839062761", "0.0726049211608"],
            ["-22.6615482631176", "123.3264381665587", "-29.3520833084752", "-4.7119434834608", "0.4403103436776"],
            [None, "0.0000091571743", "-0.0000005856539", "0.0000000171095", "-0.0000000001939"],
        ],
        "alpha": ["0.0893701431156", "0.2952163755619", "2.2164844767807",
                  "0.1171840549361", "0.1108374703554", "0.0067006105329"],
        "beta": "6.1431639772293",
    },
}

MAX_DERIVATIVE_ORDER = 4


class DomainError(ValueError):
    """Raised when a radial argument lies outside R > 0."""


@dataclass(frozen=True)
class PotentialModel:
    flavor: Flavor
    A: np.ndarray  # (6, 5)
    alpha: np.ndarray  # (6,)
    beta: float
    E_inf: float
    E_sr: float

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        alpha = np.array(self.alpha, dtype=float)
        if A.shape != (6, 5) or alpha.shape != (6,):
            raise ValueError("expected a 6x5 coefficient table and 6 exponents")
        if np.any(alpha <= 0) or not self.beta > 0:
            raise ValueError("all Gaussian exponents must be positive")
        A.flags.writeable = False
        alpha.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "alpha", alpha)

    def terms(self) -> list[tuple[float, int, float]]:
        """The potential as ``(coef, power, exponent)`` triples.

        The constant threshold is the single term with exponent 0.
        """
        out = [
            (self.E_inf, 0, 0.0),
            (self.E_sr - self.E_inf, 0, self.beta),
            (-1.0, -1, self.beta),
        ]
        for n in range(6):
            for k in range(5):
                if self.A[n, k] != 0.0:
                    out.append((float(self.A[n, k]), k, float(self.alpha[n])))
        return out

    def __call__(self, R):
        return evaluate(self, R)


def _check_r(R) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if np.any(R <= 0):
        raise DomainError("potential requires R > 0")
    return R


def _build(flavor: Flavor, table: Mapping, constants: PhysicalConstants) -> PotentialModel:
    A = np.zeros((6, 5))
    for n, row in enumerate(table["A"]):
        for k, val in enumerate(row):
            if val is not None:
                A[n, k] = float(val)
    A[5, 0] = -A[:5, 0].sum()
    alpha = np.array([float(a) for a in table["alpha"]])
    if flavor is Flavor.BO:
        E_inf, E_sr = constants.E_BO_inf, constants.E1_Ps
    else:
        E_inf, E_sr = constants.E_lep_inf, constants.mu * constants.E1_Ps
    return PotentialModel(flavor, A, alpha, float(table["beta"]), E_inf, E_sr)


def load_builtin(flavor: "Flavor | str", constants: PhysicalConstants = CONSTANTS) -> PotentialModel:
    """Built-in fit for ``flavor`` with A_60 completed from the constraint."""
    flavor = Flavor.parse(flavor)
    return _build(flavor, _TABLE[flavor], constants)


_PARAM_RE = re.compile(r"^(A)_?(\d)(\d)$|^(alpha)_?(\d)$|^(beta)$", re.IGNORECASE)


def load_parameter_file(path: "str | Path", flavor: "Flavor | str",
                        constants: PhysicalConstants = CONSTANTS) -> PotentialModel:
    """Built-in parameters overridden by ``name = value`` lines from ``path``.

    Names follow the table labels: ``A_nk`` (or ``Ank``), ``alpha_n``, ``beta``.
    Blank lines and ``#`` comments are ignored.  ``A_60`` is always derived.
    """
    flavor = Flavor.parse(flavor)
    base = _TABLE[flavor]
    table = {
        "A": [list(row) for row in base["A"]],
        "alpha": list(base["alpha"]),
        "beta": base["beta"],
    }
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'name = value'")
        name, value = (s.strip() for s in line.split("=", 1))
        float(value)  # validate early
        m = _PARAM_RE.match(name)
        if m is None:
            raise ValueError(f"{path}:{lineno}: unknown parameter {name!r}")
        if m.group(1):
            n, k = int(m.group(2)), int(m.group(3))
            if not (1 <= n <= 6 and 0 <= k <= 4):
                raise ValueError(f"{path}:{lineno}: index out of range in {name!r}")
            if (n, k) == (6, 0):
                raise ValueError(f"{path}:{lineno}: A_60 is fixed by the constraint")
            table["A"][n - 1][k] = value
        elif m.group(4):
            n = int(m.group(5))
            if not 1 <= n <= 6:
                raise ValueError(f"{path}:{lineno}: index out of range in {name!r}")
            table["alpha"][n - 1] = value
        else:
            table["beta"] = value
    return _build(flavor, table, constants)


def _eval_terms(terms: Iterable[tuple[float, int, float]], R: np.ndarray) -> np.ndarray:
    out = np.zeros_like(R)
    for c, p, a in terms:
        out += c * R**p * np.exp(-a * R * R)
    return out


def evaluate(model: PotentialModel, R):
    """V(R) in hartree; accepts scalars or arrays."""
    R = _check_r(R)
    out = _eval_terms(model.terms(), R)
    return float(out) if out.ndim == 0 else out


def _differentiate(terms, order):
    # d/dR [c R^p e^{-aR^2}] = c p R^{p-1} e^{-aR^2} - 2 a c R^{p+1} e^{-aR^2}
    for _ in range(order):
        acc: dict[tuple[int, float], float] = {}
        for c, p, a in terms:
            if p != 0:
                acc[(p - 1, a)] = acc.get((p - 1, a), 0.0) + c * p
            if a != 0.0:
                acc[(p + 1, a)] = acc.get((p + 1, a), 0.0) - 2.0 * a * c
        terms = [(c, p, a) for (p, a), c in acc.items() if c != 0.0]
    return terms


def eval_derivative(model: PotentialModel, R, order: int):
    """Analytic ``order``-th derivative of the fit, 1 <= order <= 4."""
    if not 1 <= order <= MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order must be in 1..{MAX_DERIVATIVE_ORDER}")
    R = _check_r(R)
    out = _eval_terms(_differentiate(model.terms(), order), R)
    return float(out) if out.ndim == 0 else out


def short_range_reference(R, flavor: "Flavor | str" = Flavor.BO,
                          constants: PhysicalConstants = CONSTANTS):
    """Positronium energy plus bare nuclear Coulomb attraction."""
    flavor = Flavor.parse(flavor)
    R = _check_r(R)
    e_ps = constants.E1_Ps if flavor is Flavor.BO else constants.mu * constants.E1_Ps
    out = e_ps - 1.0 / R
    return float(out) if out.ndim == 0 else out


def long_range_reference(E_inf: float, C: Mapping[int, float], R):
    """Dispersion expansion ``E_inf - sum_n C_n / R**n``."""
    R = _check_r(R)
    out = np.full_like(R, E_inf)
    for n, cn in C.items():
        out = out - cn / R**n
    return float(out) if out.ndim == 0 else out


def scaled_dispersion(C: Mapping[int, float], constants: PhysicalConstants = CONSTANTS) -> dict[int, float]:
    """Dispersion coefficients of the mass-scaled curve, C_n / mu**(n-1)."""
    return {n: cn / constants.mu ** (n - 1) for n, cn in C.items()}


def mass_scale_grid_point(R: float, E_BO: float, constants: PhysicalConstants = CONSTANTS):
    """Map a BO grid point (R, E) onto the mass-scaled curve."""
    if R <= 0:
        raise DomainError("potential requires R > 0")
    return R / constants.mu, constants.mu * E_BO


def delta_lep(bo: PotentialModel, scaled: PotentialModel, R):
    """Mass-scaled minus BO energy, in millihartree."""
    R = _check_r(R)
    out = 1000.0 * (_eval_terms(scaled.terms(), R) - _eval_terms(bo.terms(), R))
    return float(out) if out.ndim == 0 else out


def nonadiabatic_series(bo: PotentialModel, R, n_max_terms: int = 4,
                        constants: PhysicalConstants = CONSTANTS):
    """Higher-order remainder of the mass-scaled curve beyond BO + monomer correction.

    sum_{n=2}^{n_max} (-1/m_p)^n sum_{k=0}^{n} (n!/k!)^2 R^k / (n-k)! d^k E/dR^k
    """
    if n_max_terms > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"series truncated at n <= {MAX_DERIVATIVE_ORDER}")
    if n_max_terms < 2:
        raise ValueError("series starts at n = 2")
    R = _check_r(R)
    derivs = [evaluate(bo, R)] + [eval_derivative(bo, R, k) for k in range(1, n_max_terms + 1)]
    inv = 0.0 if math.isinf(constants.m_p) else -1.0 / constants.m_p
    total = np.zeros_like(R)
    for n in range(2, n_max_terms + 1):
        inner = sum(
            (math.factorial(n) / math.factorial(k)) ** 2 / math.factorial(n - k) * R**k * derivs[k]
            for k in range(n + 1)
        )
        total = total + inv**n * inner
    return float(total) if total.ndim == 0 else total


def protonium_level(nu: int, constants: PhysicalConstants = CONSTANTS) -> float:
    """Coulomb level -mu_n / (2 nu^2) of the proton-antiproton pair."""
    if nu < 1:
        raise DomainError("principal quantum number must be >= 1")
    return -constants.mu_n / (2.0 * nu * nu)


def dump_curves(R_grid, constants: PhysicalConstants = CONSTANTS):
    """Rows ``(R, V_BO, V_scaled, delta_lep_mh)`` for a potential-curve CSV."""
    bo = load_builtin(Flavor.BO, constants)
    sc = load_builtin(Flavor.MASS_SCALED, constants)
    R = _check_r(np.atleast_1d(R_grid))
    vb, vs = evaluate(bo, R), evaluate(sc, R)
    return np.column_stack([R, vb, vs, 1000.0 * (vs - vb)])
