import math
from decimal import Decimal

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar

from hhbar.constants import CONSTANTS, PhysicalConstants
from hhbar.potential import (
    DomainError, Flavor, PotentialModel, delta_lep, dump_curves, eval_derivative, evaluate,
    load_builtin, load_parameter_file, long_range_reference, mass_scale_grid_point,
    nonadiabatic_series, protonium_level, scaled_dispersion, short_range_reference,
)

BO = load_builtin(Flavor.BO)
SC = load_builtin(Flavor.MASS_SCALED)

# printed A_n0 values, n = 1..5
A_N0_BO = ["-19.8582635505679", "57.5162155781683", "4.7043278292101", "-19.9771658686913",
           "-22.3850547348492"]


def test_constants_relations():
    c = CONSTANTS
    assert c.mu == c.m_p / (c.m_p + 1)
    assert c.E_lep_inf == -c.mu
    assert c.E_lep_inf - c.E_BO_inf == pytest.approx(1 / (c.m_p + 1), rel=1e-12)
    assert c.mu_n == c.m_p / 2


def test_infinite_proton_mass():
    c = PhysicalConstants(m_p=math.inf)
    assert c.mu == 1.0


def test_builtin_table_verbatim():
    assert BO.A[0, 0] == -19.8582635505679


def test_implied_coefficient_from_exact_decimal_sum():
    expected = -sum(Decimal(s) for s in A_N0_BO)
    assert BO.A[5, 0] == pytest.approx(float(expected), rel=1e-12)
    assert BO.A[5, 0] == pytest.approx(-5.9253e-5, rel=1e-4)


@pytest.mark.parametrize("model", [BO, SC])
def test_constraint_closure(model):
    assert abs(model.A[:, 0].sum()) < 1e-12
    assert np.all(model.alpha > 0) and model.beta > 0


def test_thresholds():
    assert BO.E_inf == -1.0
    assert SC.E_inf == pytest.approx(-0.9994557, abs=1e-7)
    assert SC.E_inf == -CONSTANTS.mu
    assert SC.E_sr == CONSTANTS.mu * CONSTANTS.E1_Ps


def test_short_range_limit():
    assert evaluate(BO, 0.05) == pytest.approx(-20.25, rel=1e-3)


@pytest.mark.parametrize("model", [BO, SC])
def test_long_range_limit(model):
    assert evaluate(model, 50.0) == pytest.approx(model.E_inf, abs=1e-6)


@pytest.mark.parametrize("R", [0.0, -1.0])
def test_domain_errors(R):
    with pytest.raises(DomainError):
        evaluate(BO, R)
    with pytest.raises(DomainError):
        eval_derivative(BO, R, 1)


def test_array_evaluation_matches_scalar():
    R = np.array([0.5, 1.0, 3.0, 12.0])
    assert np.allclose(evaluate(BO, R), [evaluate(BO, r) for r in R], rtol=0, atol=0)


def test_fitted_curves_have_no_interior_extremum():
    R = np.linspace(0.3, 30, 5000)
    for model in (BO, SC):
        assert np.all(eval_derivative(model, R, 1) > 0)


def test_well_bottom_is_stationary():
    # -R^2 exp(-R^2) well with its minimum at R = 1; Coulomb core pushed to R ~ 0
    A = np.zeros((6, 5))
    A[0, 2] = -1.0
    model = PotentialModel(Flavor.BO, A, np.ones(6), 1e4, -1.0, -1.0)
    res = minimize_scalar(lambda r: evaluate(model, r), bounds=(0.3, 3.0), method="bounded",
                          options={"xatol": 1e-12})
    assert res.x == pytest.approx(1.0, abs=1e-6)
    assert abs(eval_derivative(model, res.x, 1)) < 1e-8


def test_first_derivative_finite_difference():
    h = 1e-5
    fd = (evaluate(BO, 2 + h) - evaluate(BO, 2 - h)) / (2 * h)
    assert eval_derivative(BO, 2.0, 1) == pytest.approx(fd, rel=1e-6)


def test_second_derivative_finite_difference():
    h = 1e-4
    fd = (evaluate(BO, 1 + h) - 2 * evaluate(BO, 1.0) + evaluate(BO, 1 - h)) / h**2
    assert eval_derivative(BO, 1.0, 2) == pytest.approx(fd, rel=1e-5)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_derivative_consistency_on_grid(order):
    # each order checked against a central difference of the order below
    R = np.linspace(0.3, 20, 120)
    h = 1e-4 * R
    lower = (lambda r: evaluate(BO, r)) if order == 1 else (lambda r: eval_derivative(BO, r, order - 1))
    fd = (lower(R + h) - lower(R - h)) / (2 * h)
    an = eval_derivative(BO, R, order)
    scale = np.max(np.abs(an))
    assert np.all(np.abs(an - fd) <= 1e-5 * np.maximum(np.abs(an), 1e-3 * scale))


def test_derivative_order_bounds():
    with pytest.raises(ValueError):
        eval_derivative(BO, 1.0, 5)
    with pytest.raises(ValueError):
        eval_derivative(BO, 1.0, 0)


def test_short_range_reference_values():
    assert short_range_reference(0.5) == pytest.approx(-2.25)
    assert short_range_reference(CONSTANTS.R_c) == pytest.approx(-1.59643, abs=1e-5)
    assert short_range_reference(0.5, Flavor.MASS_SCALED) == pytest.approx(CONSTANTS.mu * -0.25 - 2)


@pytest.mark.parametrize("R", np.linspace(0.01, 0.1, 10))
def test_short_range_dominance(R):
    assert abs(evaluate(BO, R) - short_range_reference(R)) * R < 1e-3


def test_long_range_reference():
    assert long_range_reference(-1, {6: 6.5}, 10.0) == pytest.approx(-1 - 6.5e-6, abs=1e-15)
    assert long_range_reference(-1, {}, 10.0) == -1
    C6 = 10.4521**4 / (2 * CONSTANTS.mu_n)
    assert C6 == pytest.approx(6.50, abs=0.01)


def test_scaled_dispersion_matches_point_scaling():
    C = {6: 6.5, 8: 124.0, 10: 3285.0}
    Ct = scaled_dispersion(C)
    mu = CONSTANTS.mu
    for R in np.linspace(12, 40, 30):
        Rs, Es = mass_scale_grid_point(R, long_range_reference(-1.0, C, R))
        assert Rs == R / mu
        assert long_range_reference(-mu, Ct, Rs) == pytest.approx(Es, rel=1e-15, abs=1e-16)


def test_mass_scale_grid_point():
    unit = PhysicalConstants(m_p=math.inf)
    assert mass_scale_grid_point(2.5, -1.3, unit) == (2.5, -1.3)
    R, E = mass_scale_grid_point(1.0, -1.0)
    assert R == pytest.approx(1.0005446, abs=1e-7)
    assert E == pytest.approx(-0.9994557, abs=1e-7)


def test_fits_compose_under_mass_scaling():
    # the two fits were optimized separately; they agree within fit error
    for R in np.linspace(1, 8, 36):
        a = evaluate(SC, R / CONSTANTS.mu)
        b = CONSTANTS.mu * evaluate(BO, R)
        interaction = abs(evaluate(BO, R) - BO.E_inf)
        assert abs(a - b) <= 3e-3 * interaction + 1e-6


def test_delta_lep_tail():
    assert delta_lep(BO, SC, 20.0) == pytest.approx(0.5443203, abs=0.002)
    assert delta_lep(BO, SC, 100.0) == pytest.approx(1000 / (CONSTANTS.m_p + 1), abs=1e-4)
    assert delta_lep(BO, SC, 3.0) == pytest.approx(0.5429322, abs=0.01)


def test_threshold_convergence():
    for R in np.linspace(60, 200, 15):
        assert abs(evaluate(BO, R) - BO.E_inf) < 1e-8
        assert abs(evaluate(SC, R) - SC.E_inf) < 1e-8


def test_nonadiabatic_series():
    assert nonadiabatic_series(BO, 5.0, 4, PhysicalConstants(m_p=math.inf)) == 0
    v = nonadiabatic_series(BO, 5.0)
    assert 1e-8 < abs(v) < 1e-5
    # tail: leading term ~ 2 E_BO / m_p^2
    lead = nonadiabatic_series(BO, 20.0, 2)
    assert lead == pytest.approx(2 * evaluate(BO, 20.0) / CONSTANTS.m_p**2, rel=1e-3)
    assert lead < 0
    with pytest.raises(ValueError):
        nonadiabatic_series(BO, 5.0, 5)


def test_protonium_levels():
    assert protonium_level(1) == pytest.approx(-459.03816812, abs=1e-8)
    assert protonium_level(2) == pytest.approx(-114.75954203, abs=1e-8)
    assert -1e-6 < protonium_level(10**5) < 0
    with pytest.raises(DomainError):
        protonium_level(0)


def test_parameter_file_round_trip(tmp_path):
    lines = ["# test override"]
    for n in range(5):
        for k in range(5):
            lines.append(f"A_{n + 1}{k} = {float(BO.A[n, k])!r}")
    for k in range(1, 5):
        lines.append(f"A6{k} = {float(BO.A[5, k])!r}")
    lines += [f"alpha_{n + 1} = {float(BO.alpha[n])!r}" for n in range(6)]
    lines.append(f"beta = {BO.beta!r}")
    path = tmp_path / "p.txt"
    path.write_text("\n".join(lines))
    model = load_parameter_file(path, Flavor.BO)
    assert np.array_equal(model.A, BO.A)
    assert evaluate(model, 3.3) == evaluate(BO, 3.3)


def test_parameter_file_rejects_implied_coefficient(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("A60 = 1.0\n")
    with pytest.raises(ValueError):
        load_parameter_file(path, Flavor.BO)


def test_dump_curves_columns():
    rows = dump_curves([1.0, 10.0])
    assert rows.shape == (2, 4)
    assert rows[1, 3] == pytest.approx(delta_lep(BO, SC, 10.0))


def test_model_is_immutable():
    with pytest.raises(ValueError):
        BO.A[0, 0] = 1.0


@settings(max_examples=50, deadline=None)
@given(st.floats(0.2, 40.0))
def test_delta_lep_is_difference(R):
    assert delta_lep(BO, SC, R) == pytest.approx(1000 * (evaluate(SC, R) - evaluate(BO, R)), rel=1e-12, abs=1e-12)
