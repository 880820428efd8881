"""Acceptance criteria at their stated tolerances, on the reference basis.

Every check records a PASS/FAIL entry; one line per criterion is printed in
the terminal summary.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hhbar import reference, scattering, spectrum, wkb
from hhbar.basis import BasisSpec, build
from hhbar.constants import CONSTANTS
from hhbar.integrals import assemble, kinetic_element, overlap_element, potential_element
from hhbar.potential import Flavor, delta_lep, load_builtin

import oracles
from conftest import REFERENCE, record, reference_run

MU = CONSTANTS.mu_n
MODELS = {"bo": load_builtin(Flavor.BO), "scaled": load_builtin(Flavor.MASS_SCALED)}
LADDER = {l: build(BasisSpec(120, 3e-5, 20, l=l)) for l in (0, 1)}


def check(criterion, part, ok, detail=""):
    assert record(criterion, part, ok, detail), f"criterion {criterion}, {part}: {detail}"


def _energy_checks(criterion, result, ref_E, ref_eps, n_low, tail, eps_tol):
    dE = max(abs(result.state(nu).energy - ref_E[nu]) for nu in range(1, n_low + 1))
    check(criterion, f"E_nu, nu <= {n_low}", dE <= 1e-4, f"max |dE| = {dE:.3g}")
    eps = spectrum.dissociation_energies(result)
    worst = max(abs(eps[nu - 1] - ref_eps[nu]) / ref_eps[nu] for nu in tail)
    check(criterion, f"eps_nu, nu in {tail}", worst <= eps_tol, f"max rel = {worst:.3g}")


# 1, 2: l = 0 spectra

def test_criterion_1_bo_table(bo0):
    _energy_checks(1, bo0, reference.table2_energies("bo"), reference.table2_dissociation("bo"),
                   20, (27, 28, 29), 0.02)


def test_criterion_2_scaled_table(sc0):
    _energy_checks(2, sc0, reference.table2_energies("scaled"), reference.table2_dissociation("scaled"),
                   20, (27, 28, 29), 0.02)
    delta = spectrum.protonium_comparison(sc0, 19)
    worst = float(np.max(np.abs(delta - 0.250)))
    check(2, "delta_nu, nu <= 19", worst <= 0.001, f"max |delta - 0.250| = {worst:.3g}")


# 3: l = 1 spectra

@pytest.mark.parametrize("flavor", ["bo", "scaled"])
def test_criterion_3_p_wave_table(flavor):
    res = reference_run(flavor, 1)
    _energy_checks(3, res, reference.table3_energies(flavor), reference.table3_dissociation(flavor),
                   19, (26, 27, 28), 0.03)


# 4: bound-state counts

@pytest.mark.parametrize("flavor,l", [("bo", 0), ("scaled", 0), ("bo", 1), ("scaled", 1)])
def test_criterion_4_bound_counts(flavor, l):
    n = reference_run(flavor, l).n_bound
    check(4, f"{flavor} l={l}", n == reference.N_BOUND[l], f"n_bound = {n}")


# 5: tangent scattering length with basis-scan uncertainty

def test_criterion_5_scattering_length():
    est = scattering.uncertainty_scan(REFERENCE, workers=3)
    ok = abs(est.a - reference.SCATTERING_LENGTH) <= reference.SCATTERING_LENGTH_UNCERTAINTY
    check(5, "a within 7.6 +- 0.4", ok, f"a = {est.a:.4f} +- {est.uncertainty:.3f}")
    anchor = reference.SCATTERING_LENGTH_NUMERICAL
    combined = reference.SCATTERING_LENGTH_UNCERTAINTY + est.uncertainty
    check(5, "consistent with 7.7", abs(est.a - anchor) <= combined,
          f"|a - {anchor}| = {abs(est.a - anchor):.3f}, bound {combined:.3f}")
    check(5, "scan size", len(est.scan) == 6 and est.warning is None, f"{len(est.scan)} points")


# 6: WKB with calibrated tail constants

def _calibration(flavor, result):
    eps = dict(enumerate(spectrum.dissociation_energies(result), 1))
    b6 = reference.BETA6_BO if flavor == "bo" else reference.BETA6_SCALED
    th = reference.table4(flavor)
    rows = [(n, eps[n], th[n]) for n in wkb.DEFAULT_CALIBRATION_ROWS]
    cal = wkb.calibrate_tail_constants(rows, wkb.TailParams.from_beta6(b6, MU), wkb.TRUNCATION_OFFSET)
    return cal.params, eps, th


@pytest.mark.parametrize("flavor", ["bo", "scaled"])
def test_criterion_6_held_out_rows(flavor):
    res = reference_run(flavor, 0)
    params, eps, th = _calibration(flavor, res)
    held = [nu for nu in th if nu not in wkb.DEFAULT_CALIBRATION_ROWS]
    dev = max(abs(wkb.threshold_quantum_number(nu, eps[nu], params) - th[nu]) for nu in held)
    check(6, f"{flavor} held-out nu_th", dev <= 0.02, f"max dev = {dev:.4f}")


@pytest.mark.parametrize("flavor", ["bo", "scaled"])
def test_criterion_6_scattering_length(flavor):
    res = reference_run(flavor, 0)
    params, eps, _ = _calibration(flavor, res)
    a = wkb.wkb_scattering_length(eps[res.n_bound], params)
    target = reference.WKB_SCATTERING_LENGTH[flavor]
    check(6, f"{flavor} WKB a", abs(a - target) <= 0.1, f"a = {a:.4f} vs {target}")


# the reference nu_th for row 28 is 28.94 in both flavors, so a calibration that
# reproduces the rows to +-0.02 cannot give floor 29 there
@pytest.mark.xfail(strict=True, reason="row 28 has nu_th < 29 in the reference rows themselves")
@pytest.mark.parametrize("flavor", ["bo", "scaled"])
def test_criterion_6_floor(flavor):
    res = reference_run(flavor, 0)
    params, eps, th = _calibration(flavor, res)
    low = [nu for nu in th if nu >= 23 and wkb.predicted_bound_count(nu, eps[nu], params) != 29]
    check(6, f"{flavor} floor(nu_th) = 29 for nu >= 23", not low, f"rows {low}")


# 7: leptonic tail

def test_criterion_7_table5_tail():
    bo, sc = MODELS["bo"], MODELS["scaled"]
    ref = {float(r[0]): float(r[1]) for r in reference.TABLE5}
    dev = max(abs(delta_lep(bo, sc, R) - ref[R]) for R in (10.0, 12.0, 15.0, 20.0))
    check(7, "R in {10, 12, 15, 20}", dev <= 0.002, f"max dev = {dev:.3g} mh")
    limit = 1000.0 / (CONSTANTS.m_p + 1)
    dl = abs(delta_lep(bo, sc, 100.0) - limit)
    check(7, "R = 100 limit", dl <= 1e-4, f"dev = {dl:.3g} mh")


# 8: integrals against quadrature, symmetry, eigensolver residual

def _rel(a, b):
    return abs(a - float(b)) / abs(float(b))


_pairs = st.tuples(st.sampled_from([0, 1]), st.integers(0, 239), st.integers(0, 239))
_worst = {"S": 0.0, "T": 0.0, "V": 0.0}
_TOL = {"S": 1e-10, "T": 1e-10, "V": 1e-8}


def _element_check(kind, value, exact):
    err = _rel(value, exact)
    _worst[kind] = max(_worst[kind], err)
    if err > _TOL[kind]:
        record(8, f"{kind} element", False, f"rel err {err:.3g}")
    assert err <= _TOL[kind]


@settings(max_examples=50, deadline=None, derandomize=True)
@given(_pairs)
def test_criterion_8_overlap(p):
    l, i, j = p
    _element_check("S", overlap_element(LADDER[l][i], LADDER[l][j]), oracles.overlap(LADDER[l][i], LADDER[l][j]))


@settings(max_examples=50, deadline=None, derandomize=True)
@given(_pairs)
def test_criterion_8_kinetic(p):
    l, i, j = p
    fi, fj = LADDER[l][i], LADDER[l][j]
    _element_check("T", kinetic_element(fi, fj, MU), oracles.kinetic_operator_form(fi, fj, MU))


@settings(max_examples=50, deadline=None, derandomize=True)
@given(_pairs, st.sampled_from(["bo", "scaled"]))
def test_criterion_8_potential(p, flavor):
    l, i, j = p
    fi, fj = LADDER[l][i], LADDER[l][j]
    _element_check("V", potential_element(fi, fj, MODELS[flavor]), oracles.potential(fi, fj, MODELS[flavor]))


def test_criterion_8_symmetry_and_residual(bo0):
    S, T, V = assemble(LADDER[0], MODELS["bo"], MU)
    sym = all(np.array_equal(M, M.T) for M in (S, T, V))
    check(8, "exact symmetry", sym)
    res = bo0.diagnostics["residual"]
    check(8, "residual_check", res < 1e-7, f"residual = {res:.3g}")
    check(8, "quadrature sweep", all(_worst[k] <= _TOL[k] for k in _worst),
          ", ".join(f"{k} {v:.2g}" for k, v in _worst.items()))


# 9: structure

def test_criterion_9_nodes(bo0):
    R = spectrum.default_grid()
    bad = [nu for nu in range(1, 30)
           if spectrum.count_nodes(spectrum.radial_wavefunction(bo0, nu, R)[1]) != nu - 1]
    check(9, "nodes = nu - 1", not bad, f"states {bad}")


def test_criterion_9_n_max_growth(bo0):
    prev = None
    worst = -math.inf
    for n in (80, 100):
        E = reference_run("bo", 0, n_max=n).energies[:29]
        if prev is not None:
            worst = max(worst, float(np.max(E - prev)))
        prev = E
    worst = max(worst, float(np.max(bo0.energies[:29] - prev)))
    check(9, "E non-increasing in n_max", worst <= 0.0, f"max rise {worst:.3g}")


def test_criterion_9_tau_stability(bo0):
    eps_ref = spectrum.dissociation_energies(bo0)[28]
    worst = 0.0
    for tau in (1e-13, 1e-11):
        res = reference_run("bo", 0, tau=tau)
        worst = max(worst, abs(spectrum.dissociation_energies(res)[28] - eps_ref) / eps_ref)
    check(9, "eps_29 vs tau", worst <= 0.02, f"max rel change {worst:.3g}")
