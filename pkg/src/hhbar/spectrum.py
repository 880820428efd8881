"""End-to-end vibrational spectrum: basis, matrices, solve, classify."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import basis as basis_mod
from . import eigensolver, integrals
from .basis import BasisFunction, BasisSpec, Kind
from .config import RunConfig
from .constants import CONSTANTS, PhysicalConstants
from .potential import Flavor, PotentialModel, load_builtin, load_parameter_file, protonium_level

log = logging.getLogger(__name__)

THRESHOLD_GUARD = 1e-12


@dataclass
class State:
    nu_index: int
    energy: float
    coefficients: np.ndarray
    bound: bool
    at_threshold: bool = False


@dataclass
class SpectrumResult:
    flavor: Flavor
    l: int
    basis: BasisSpec
    functions: list[BasisFunction]
    states: list[State]
    threshold: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.states])

    @property
    def bound_states(self) -> list[State]:
        return [s for s in self.states if s.bound]

    @property
    def n_bound(self) -> int:
        return len(self.bound_states)

    def first_continuum(self) -> State:
        for s in self.states:
            if not s.bound:
                return s
        raise ValueError("spectrum has no continuum state")

    def state(self, nu_index: int) -> State:
        if not 1 <= nu_index <= len(self.states):
            raise IndexError(f"state {nu_index} out of range 1..{len(self.states)}")
        return self.states[nu_index - 1]


def model_for(config: RunConfig, constants: PhysicalConstants = CONSTANTS) -> PotentialModel:
    if config.params:
        return load_parameter_file(config.params, config.flavor, constants)
    return load_builtin(config.flavor, constants)


def _orient(functions, coeffs):
    # u'(0+) is proportional to sum of cos-coefficient * norm (sin terms vanish at 0)
    cos_mask = np.array([f.kind is Kind.COS for f in functions])
    norms = np.array([f.norm for f in functions], dtype=coeffs.dtype)
    slope = (coeffs[cos_mask] * norms[cos_mask, None]).sum(axis=0)
    sign = np.where(slope < 0, -1, 1).astype(coeffs.dtype)
    return coeffs * sign[None, :]


def solve_model(model: PotentialModel, spec: BasisSpec,
                policy: eigensolver.ConditioningPolicy = eigensolver.ConditioningPolicy(),
                constants: PhysicalConstants = CONSTANTS,
                with_residual: bool = False) -> SpectrumResult:
    functions = basis_mod.build(spec)
    S, T, V = integrals.assemble(functions, model, constants.mu_n, extended=policy.extended)
    H = T + V
    res = eigensolver.solve(H, S, policy)
    coeffs = _orient(functions, res.coefficient_vectors)
    threshold = model.E_inf
    states = []
    for k, e in enumerate(res.eigenvalues):
        e = float(e)
        states.append(State(
            nu_index=k + 1,
            energy=e,
            coefficients=coeffs[:, k],
            bound=e < threshold - THRESHOLD_GUARD,
            at_threshold=abs(e - threshold) <= THRESHOLD_GUARD,
        ))
    diag = {
        "retained_dimension": res.retained_dimension,
        "dropped_count": res.dropped_count,
        "overlap_condition": res.overlap_condition,
        "tau": policy.tau,
        "extended": policy.extended,
    }
    if with_residual:
        diag["residual"] = eigensolver.residual_check(H, S, res)
    log.debug("solved %s l=%d n_max=%d: %d bound", model.flavor.value, spec.l, spec.n_max,
              sum(s.bound for s in states))
    return SpectrumResult(model.flavor, spec.l, spec, functions, states, threshold, diag)


def run(config: RunConfig, constants: PhysicalConstants = CONSTANTS,
        with_residual: bool = False) -> SpectrumResult:
    return solve_model(model_for(config, constants), config.basis_spec(), config.policy(),
                       constants, with_residual)


def dissociation_energies(result: SpectrumResult) -> np.ndarray:
    """threshold - E for every bound state, in ladder order."""
    return np.array([result.threshold - s.energy for s in result.bound_states])


def protonium_comparison(result: SpectrumResult, n_states: int | None = None,
                         constants: PhysicalConstants = CONSTANTS) -> np.ndarray:
    """delta_nu = E^Pn_nu - E_nu for s-states (bound states unless ``n_states`` given)."""
    if result.l != 0:
        raise ValueError("protonium comparison applies to l = 0 only")
    n = result.n_bound if n_states is None else n_states
    return np.array([protonium_level(s.nu_index, constants) - s.energy for s in result.states[:n]])


def _basis_values(functions, R, dtype):
    R = np.asarray(R, dtype=dtype)
    out = np.empty((len(functions), R.size), dtype=dtype)
    for i, f in enumerate(functions):
        x = dtype(f.nu) * R * R
        trig = np.cos(dtype(f.alpha_osc) * x) if f.kind is Kind.COS else np.sin(dtype(f.alpha_osc) * x)
        out[i] = basis_mod.normalization(f.kind, f.nu, f.l, f.alpha_osc, dtype) * R**f.l * np.exp(-x) * trig
    return out


def radial_wavefunction(result: SpectrumResult, nu_index: int, R_grid):
    """phi(R) and u(R) = R phi(R) of state ``nu_index`` (1-based)."""
    state = result.state(nu_index)
    c = state.coefficients
    R = np.atleast_1d(np.asarray(R_grid, dtype=float))
    G = _basis_values(result.functions, R, c.dtype.type)
    phi = (c[:, None] * G).sum(axis=0)
    phi = np.asarray(phi, dtype=float)
    return phi, R * phi


def default_grid(r_lo: float = 3e-5, r_hi: float = 30.0, n: int = 2000) -> np.ndarray:
    return np.geomspace(r_lo, r_hi, n)


def count_nodes(u: np.ndarray, rel_floor: float = 1e-6) -> int:
    """Sign changes of u, ignoring samples below ``rel_floor * max|u|``."""
    u = np.asarray(u)
    big = np.abs(u) > rel_floor * np.abs(u).max()
    s = np.sign(u[big])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def convergence_scan(flavor: "Flavor | str", l: int, n_max_values, r_max_values,
                     r_min: float = 7e-5, indices=None, base: RunConfig | None = None,
                     workers: int = 1, constants: PhysicalConstants = CONSTANTS):
    """Selected eigenvalues over a (n_max, r_max) grid.

    Returns a list of dicts ``{n_max, r_max, n_bound, energies}`` where
    ``energies`` maps 1-based state index to energy.
    """
    base = base or RunConfig()
    flavor = Flavor.parse(flavor)
    indices = list(indices) if indices is not None else list(range(26, 33))
    jobs = [(int(n), float(r)) for n in n_max_values for r in r_max_values]

    def one(job):
        n, r = job
        cfg = base.with_(flavor=flavor, l=l, n_max=n, r_max=r, r_min=r_min)
        res = run(cfg, constants)
        energies = {k: res.states[k - 1].energy for k in indices if k <= len(res.states)}
        return {"n_max": n, "r_max": r, "n_bound": res.n_bound, "threshold": res.threshold,
                "energies": energies}

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(one, jobs))
    return [one(j) for j in jobs]


def to_json_dict(result: SpectrumResult) -> dict:
    """Full result for downstream basis reuse; coefficients as decimal strings
    so that extended-precision values survive the round trip."""
    return {
        "flavor": result.flavor.value,
        "l": result.l,
        "basis": {
            "n_max": result.basis.n_max,
            "r_min": result.basis.r_min,
            "r_max": result.basis.r_max,
            "alpha_osc": result.basis.alpha_osc,
            "functions": [{"kind": f.kind.value, "nu": f.nu, "norm": f.norm} for f in result.functions],
        },
        "threshold": result.threshold,
        "diagnostics": result.diagnostics,
        "states": [
            {
                "nu": s.nu_index,
                "energy": s.energy,
                "bound": s.bound,
                "at_threshold": s.at_threshold,
                "coefficients": [np.format_float_scientific(x, unique=True) for x in s.coefficients],
            }
            for s in result.states
        ],
    }
