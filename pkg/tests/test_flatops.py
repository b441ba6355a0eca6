"""Flat-model first-order operators between irreducible type bundles."""
import random
from fractions import Fraction

from g2kit.flatops import (
    COMPOSITION_IDENTITIES,
    TypedSection,
    adjointness_report,
    boundary_window,
    codifferential_poly,
    d_poly,
    d17,
    d71,
    laplacian_poly,
    random_section,
    residual_size,
    derivative_decomposition_residuals,
    composition_identity_residuals,
    laplacian_formula_residuals,
)
from g2kit.poly import Poly
from g2kit.forms import Form


def test_d_squares_to_zero():
    rng = random.Random(0)
    for label in (1, 7, 14, 27):
        s = random_section(rng, label, max_degree=2)
        dd = d_poly(d_poly(s.payload)) if s.payload.degree < 6 else Form(7)
        assert residual_size(dd) == 0


def test_laplacian_on_scalars_is_minus_sum_of_squares():
    x1 = Poly.variable(1)
    f = Form(0, {0: x1 * x1})
    lap = laplacian_poly(f)
    # Delta(x1^2) = -2 with the sign convention delta = -div
    assert lap == Form(0, {0: Poly.constant(Fraction(-2))})


def test_codifferential_adjoint_sign_convention():
    # delta on 1-forms recovers minus the divergence
    a = Form(1, {1 << 0: Poly.variable(1)})
    d71a = d71(a)
    assert d71a == Form(0, {0: Poly.constant(Fraction(-1))})


def test_table1_rows_vanish():
    report = derivative_decomposition_residuals(trials=4, max_poly_degree=2, seed=1)
    for key, residual in report.items():
        if key == "trials":
            continue
        assert str(residual) == "0", key


def test_table2_identities_vanish():
    report = composition_identity_residuals(trials=6, max_poly_degree=2, seed=2)
    assert len(report) == len(COMPOSITION_IDENTITIES) + 1  # + trials metadata
    for key, residual in report.items():
        if key == "trials":
            continue
        assert str(residual) == "0", key


def test_table3_laplacians_vanish():
    report = laplacian_formula_residuals(trials=4, max_poly_degree=2, seed=3)
    for key, residual in report.items():
        if key == "trials":
            continue
        assert str(residual) == "0", key


def test_adjointness_with_boundary_window():
    report = adjointness_report(trials=2, max_poly_degree=1, seed=4)
    for key, residual in report.items():
        if key == "trials":
            continue
        assert str(residual) == "0", key


def test_boundary_window_vanishes_on_faces():
    w = boundary_window()
    # w = prod (1 - x_i^2) vanishes wherever any coordinate is +-1
    point = [1] + [0] * 6
    assert w.evaluate(point) == 0
    assert w.evaluate([0] * 7) == 1


def test_typed_sections_are_pure():
    rng = random.Random(5)
    for label in (1, 7, 14, 27):
        s = random_section(rng, label, max_degree=2)
        assert s.label == label
        assert s.is_pure()
