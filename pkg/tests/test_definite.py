"""Metric extraction from definite 3-forms and deformation formulas."""
import random
from fractions import Fraction

import pytest

from g2kit.definite import (
    NonDefiniteError,
    deformation_split,
    is_definite,
    metric_from,
    metric_linearization,
    predicted_derivatives,
    taylor_volume,
)
from g2kit.forms import Form, mat_mul, mat_transpose, pullback
from g2kit.g2 import PHI, STAR_PHI


def rand_form(rng, degree, n=5, scale=Fraction(1, 5)):
    pairs = []
    for _ in range(n):
        idx = tuple(sorted(rng.sample(range(1, 8), degree)))
        pairs.append((idx, Fraction(rng.randint(-9, 9), 4) * scale))
    return Form.from_terms(degree, pairs)


def test_model_form_gives_identity_metric():
    st = metric_from(PHI)
    assert st.metric.is_identity
    assert st.s == 1
    assert st.orientation == 1
    assert st.star_sigma == STAR_PHI


def test_non_definite_rejected():
    assert not is_definite(Form.basis(1, 2, 3))
    with pytest.raises(NonDefiniteError):
        metric_from(Form.basis(1, 2, 3))


def test_scaling_covariance_exact():
    # lambda^3 sigma gives lambda^2 g, exactly in rationals
    lam = Fraction(3, 2)
    st = metric_from(PHI.scale(lam ** 3))
    for i in range(7):
        for j in range(7):
            assert st.metric.matrix[i][j] == (lam * lam if i == j else 0)


def test_gl_equivariance_float():
    rng = random.Random(2)
    for _ in range(5):
        A = [[rng.uniform(-0.3, 0.3) for _ in range(7)] for _ in range(7)]
        for i in range(7):
            A[i][i] += 1.0
        st = metric_from(pullback(A, PHI.to_float()))
        # metric of the pullback is proportional to A^T A; check row by row
        g = st.metric.matrix
        ref = mat_mul(mat_transpose(A), A)
        ratio = g[0][0] / ref[0][0]
        for i in range(7):
            for j in range(7):
                assert abs(g[i][j] - ratio * ref[i][j]) <= 1e-8


def test_star_squares_to_identity():
    rng = random.Random(3)
    st = metric_from((PHI + rand_form(rng, 3)).to_float())
    for degree in (1, 2, 3):
        a = rand_form(rng, degree).to_float()
        ss = st.star(st.star(a))
        assert (ss - a).max_abs() <= 1e-10 * max(1.0, a.max_abs())


def test_deformation_split_reconstructs():
    rng = random.Random(4)
    st = metric_from((PHI + rand_form(rng, 3, scale=Fraction(1, 10))).to_float())
    psi = rand_form(rng, 3).to_float()
    f0, f1, f3 = deformation_split(st, psi)
    recon = (
        st.sigma.scale(3 * f0) + st.star(f1.wedge(st.sigma)) + f3
    )
    assert (recon - psi).max_abs() <= 1e-10 * max(1.0, psi.max_abs())
    # f3 is of pure type 27 for the deformed structure
    assert abs(st.inner(f3, st.sigma)) <= 1e-10
    assert st.star(f3.wedge(st.sigma)).max_abs() <= 1e-10


def test_predicted_derivatives_match_finite_differences():
    rng = random.Random(5)
    st = metric_from((PHI + rand_form(rng, 3, scale=Fraction(1, 10))).to_float())
    psi = rand_form(rng, 3).to_float()
    f0, f1, f3 = deformation_split(st, psi)
    pred = predicted_derivatives(st, f0, f1, f3)
    h = 1e-5
    plus = metric_from(st.sigma + psi.scale(h))
    minus = metric_from(st.sigma + psi.scale(-h))
    fd_star = (plus.star_sigma - minus.star_sigma).scale(1.0 / (2 * h))
    assert (fd_star - pred["star_sigma_dot"]).max_abs() <= 1e-4
    fd_vol = (plus.vol - minus.vol).scale(1.0 / (2 * h))
    assert (fd_vol - pred["vol_dot"]).max_abs() <= 1e-4
    gd = pred["g_dot"]
    for i in range(7):
        for j in range(7):
            fd = (plus.metric.matrix[i][j] - minus.metric.matrix[i][j]) / (2 * h)
            assert abs(fd - gd[i][j]) <= 1e-4


def test_metric_linearization_consistent():
    rng = random.Random(6)
    st = metric_from((PHI + rand_form(rng, 3, scale=Fraction(1, 10))).to_float())
    psi = rand_form(rng, 3).to_float()
    f0, f1, f3 = deformation_split(st, psi)
    direct = metric_linearization(st, psi)
    pred = predicted_derivatives(st, f0, f1, f3)["g_dot"]
    for i in range(7):
        for j in range(7):
            assert abs(direct[i][j] - pred[i][j]) <= 1e-10


def test_taylor_volume_quadratic_model():
    # vol(phi + eps psi) = taylor_volume(eps b0, eps b1, eps b3) + O(eps^3)
    rng = random.Random(7)
    st = metric_from(PHI)
    psi = rand_form(rng, 3).to_float()
    f0, f1, f3 = deformation_split(st, psi)

    def vol(eps):
        return metric_from(PHI.to_float() + psi.scale(eps)).s

    def pred(eps):
        return taylor_volume(eps * f0, f1.scale(eps), f3.scale(eps))

    for eps in (1e-2, 5e-3):
        err = abs(vol(eps) - pred(eps))
        assert err <= 10.0 * eps ** 3
