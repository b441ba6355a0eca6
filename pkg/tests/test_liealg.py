"""Left-invariant structures: torsion, curvature, closed-case identities."""
import random
from fractions import Fraction

import pytest

from g2kit.definite import metric_from
from g2kit.forms import Form, form_inner, form_norm_sq
from g2kit.g2 import PHI, two_form_rank
from g2kit.liealg import (
    LieAlgebra7,
    builtin_algebra,
    builtin_names,
    closed_structure_report,
    erp_residual,
    natural_equation_residual,
    ricci_torsion_formula,
    ricci_via_connection,
    scalar_curvature,
    scalar_via_connection,
    torsion_forms,
)


def test_builtin_algebras_satisfy_jacobi():
    for name in builtin_names():
        L = builtin_algebra(name)
        assert L.jacobi_residual() == 0, name


def test_exterior_derivative_squares_to_zero():
    rng = random.Random(0)
    for name in builtin_names():
        L = builtin_algebra(name)
        for degree in (1, 2, 3):
            pairs = []
            for _ in range(4):
                idx = tuple(sorted(rng.sample(range(1, 8), degree)))
                pairs.append((idx, Fraction(rng.randint(-5, 5))))
            a = Form.from_terms(degree, pairs)
            assert L.d_form(L.d_form(a)).is_zero(), name


def test_abelian_structure_is_torsion_free():
    L = builtin_algebra("abelian")
    st = metric_from(PHI)
    t = torsion_forms(L, st)
    assert t.tau0 == 0
    assert t.tau1.is_zero()
    assert t.tau2.is_zero()
    assert t.tau3.is_zero()
    assert scalar_curvature(t) == 0


def test_torsion_reconstructs_the_derivatives():
    rng = random.Random(1)
    L = builtin_algebra("fernandez")
    pert = Form.from_terms(
        3,
        [
            (tuple(sorted(rng.sample(range(1, 8), 3))), Fraction(rng.randint(-3, 3), 20))
            for _ in range(5)
        ],
    )
    st = metric_from((PHI + pert).to_float())
    t = torsion_forms(L, st)
    res = t.reconstruction_residuals()
    for key, val in res.items():
        assert val <= 1e-10, key


def test_fernandez_structure_is_closed_with_pure_tau2():
    L = builtin_algebra("fernandez")
    st = metric_from(PHI)
    assert L.d_form(st.sigma).is_zero()
    t = torsion_forms(L, st)
    assert t.tau0 == 0
    assert t.tau1.is_zero()
    assert t.tau3.is_zero()
    assert t.tau2 == Form.basis(2, 7) - Form.basis(3, 6)
    assert scalar_curvature(t) == -1


def test_erp_example_torsion_and_curvature():
    L = builtin_algebra("erp-sl2c")
    st = metric_from(PHI)
    t = torsion_forms(L, st)
    assert t.tau2 == Form.basis(4, 5).scale(6) - Form.basis(6, 7).scale(6)
    assert two_form_rank(t.tau2) == 4
    assert t.tau2.wedge(t.tau2).wedge(t.tau2).is_zero()
    assert erp_residual(L, st) == 0
    assert scalar_curvature(t) == -36


def test_ricci_routes_agree():
    # the torsion-form Ricci formula against the Levi-Civita computation
    for name in builtin_names():
        L = builtin_algebra(name)
        st = metric_from(PHI)
        r1 = ricci_torsion_formula(L, st)
        r2 = ricci_via_connection(L, st.metric)
        for i in range(7):
            for j in range(7):
                assert abs(float(r1[i][j]) - float(r2[i][j])) <= 1e-9, name
        assert abs(float(scalar_curvature(torsion_forms(L, st)))
                   - float(scalar_via_connection(L, st.metric))) <= 1e-9


def test_closed_report_scalar_identity():
    for name in ("fernandez", "erp-sl2c", "abelian"):
        L = builtin_algebra(name)
        st = metric_from(PHI)
        rep = closed_structure_report(L, st)
        assert rep["closed_residual"] == 0
        # Scal = -(1/2)|tau_2|^2, hence nonpositive, zero iff torsion free
        assert rep["scalar_curvature"] == -Fraction(1, 2) * form_norm_sq(rep["tau2"], )
        assert rep["scalar_curvature"] <= 0
        assert (rep["scalar_curvature"] == 0) == rep["tau2"].is_zero()
        # d tau_2 has singlet coefficient |tau_2|^2/7 and no 7-part
        dtau = L.d_form(rep["tau2"])
        assert form_inner(dtau, st.sigma) == form_norm_sq(rep["tau2"])
        assert st.star(dtau.wedge(st.sigma)).is_zero()


def test_pinch_ratio_values():
    rep = closed_structure_report(builtin_algebra("erp-sl2c"), metric_from(PHI))
    assert rep["pinch_ratio"] == 1
    rep = closed_structure_report(builtin_algebra("fernandez"), metric_from(PHI))
    assert rep["pinch_ratio"] == Fraction(39, 4)
    rep = closed_structure_report(builtin_algebra("abelian"), metric_from(PHI))
    assert rep["pinch_ratio"] is None


def test_natural_equation_residual_zero_for_erp_lambda():
    L = builtin_algebra("erp-sl2c")
    st = metric_from(PHI)
    # the example solves the natural second-order equation at lambda = 1/6
    assert natural_equation_residual(L, st, Fraction(1, 6)) == 0
    assert natural_equation_residual(L, st, Fraction(1)) != 0


def test_algebra_json_round_trip(tmp_path):
    L = builtin_algebra("fernandez")
    data = L.to_json()
    L2 = LieAlgebra7.from_json(data)
    assert [f for f in L2.d] == [f for f in L.d]
    p = tmp_path / "alg.json"
    import json

    p.write_text(json.dumps(data))
    L3 = LieAlgebra7.from_file(str(p))
    assert [f for f in L3.d] == [f for f in L.d]
