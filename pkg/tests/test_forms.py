"""Exterior algebra, Hodge star, and pullback basics."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from g2kit.forms import (
    Form,
    Metric,
    Vector,
    form_inner,
    hodge_star,
    mat_inv,
    mat_mul,
    pullback,
    volume_form,
)

DIM = 7


def rand_form(rng, degree, n=4):
    pairs = []
    for _ in range(n):
        idx = tuple(sorted(rng.sample(range(1, 8), degree)))
        pairs.append((idx, Fraction(rng.randint(-9, 9), rng.randint(1, 4))))
    return Form.from_terms(degree, pairs)


coeffs = st.integers(-9, 9)


@st.composite
def forms(draw, degree):
    rng = random.Random(draw(st.integers(0, 10**6)))
    return rand_form(rng, degree)


@given(forms(2), forms(2))
@settings(max_examples=25, deadline=None)
def test_wedge_anticommutes_on_odd_product(a, b):
    # two 2-forms commute; pair each with a 1-form to see the sign rule
    e1 = Form.basis(5)
    assert a.wedge(b) == b.wedge(a)
    assert e1.wedge(a) == a.wedge(e1)


@given(forms(1), forms(1))
@settings(max_examples=25, deadline=None)
def test_one_forms_anticommute(a, b):
    assert a.wedge(b) == b.wedge(a).scale(-1)
    assert a.wedge(a).is_zero()


@given(forms(1), forms(2), forms(3))
@settings(max_examples=25, deadline=None)
def test_wedge_associative(a, b, c):
    assert a.wedge(b.wedge(c)) == (a.wedge(b)).wedge(c)


def test_hodge_involution_identity_metric():
    rng = random.Random(3)
    for degree in range(8):
        a = rand_form(rng, degree) if degree else Form.constant(Fraction(5, 3))
        ss = hodge_star(hodge_star(a))
        # on a 7-manifold with Riemannian signature ** = +1 in every degree
        assert ss == a


def test_hodge_star_is_isometry():
    rng = random.Random(4)
    for degree in (1, 2, 3):
        a = rand_form(rng, degree)
        assert form_inner(a, a) == form_inner(hodge_star(a), hodge_star(a))


def test_volume_form_normalization():
    assert hodge_star(Form.constant(Fraction(1))) == volume_form()


def test_contract_antiderivation():
    rng = random.Random(5)
    v = Vector([Fraction(rng.randint(-3, 3)) for _ in range(DIM)])
    a = rand_form(rng, 1)
    b = rand_form(rng, 2)
    lhs = a.wedge(b).contract(v)
    rhs = b.scale(a.contract(v).terms.get(0, 0)) + a.wedge(b.contract(v)).scale(-1)
    assert lhs == rhs


def test_pullback_functorial_and_wedge_compatible():
    rng = random.Random(6)
    A = [[Fraction(rng.randint(-2, 2)) for _ in range(DIM)] for _ in range(DIM)]
    for i in range(DIM):
        A[i][i] += Fraction(3)
    B = [[Fraction(rng.randint(-1, 1)) for _ in range(DIM)] for _ in range(DIM)]
    for i in range(DIM):
        B[i][i] += Fraction(2)
    a = rand_form(rng, 2)
    b = rand_form(rng, 1)
    assert pullback(A, pullback(B, a)) == pullback(mat_mul(B, A), a)
    assert pullback(A, a.wedge(b)) == pullback(A, a).wedge(pullback(A, b))


def test_mat_inv_exact():
    rng = random.Random(7)
    A = [[Fraction(rng.randint(-4, 4), 3) for _ in range(DIM)] for _ in range(DIM)]
    for i in range(DIM):
        A[i][i] += Fraction(5)
    P = mat_mul(A, mat_inv(A))
    for i in range(DIM):
        for j in range(DIM):
            assert P[i][j] == (1 if i == j else 0)


def test_metric_round_trip():
    g = Metric.identity()
    assert g.is_identity
    assert g.det() == 1
    with pytest.raises(ValueError):
        Metric([[1, 2], [3, 4]])


def test_form_json_round_trip():
    rng = random.Random(8)
    a = rand_form(rng, 3)
    assert Form.from_json(a.to_json()) == a
