"""Model 3-form calculus: epsilon tables, type projections, i/j maps."""
import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from g2kit.forms import Form, form_inner, form_norm_sq, hodge_star
from g2kit.g2 import (
    PHI,
    STAR_PHI,
    cross,
    epsilon_identity_residuals,
    i_map,
    j_map,
    lambda14_invariants,
    project2,
    project3,
    project4,
    project5,
    q_pairing,
    sym_trace,
    two_form_rank,
)
from g2kit.forms import Vector


def rand_form(rng, degree, n=5):
    pairs = []
    for _ in range(n):
        idx = tuple(sorted(rng.sample(range(1, 8), degree)))
        pairs.append((idx, Fraction(rng.randint(-9, 9), rng.randint(1, 4))))
    return Form.from_terms(degree, pairs)


def rand_sym(rng, traceless=False):
    h = [[Fraction(0)] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(i, 7):
            h[i][j] = h[j][i] = Fraction(rng.randint(-6, 6), 3)
    if traceless:
        t = sum(h[i][i] for i in range(7)) / 7
        for i in range(7):
            h[i][i] -= t
    return h


def test_model_forms_are_dual():
    assert hodge_star(PHI) == STAR_PHI
    assert form_norm_sq(PHI) == 7
    assert form_norm_sq(STAR_PHI) == 7


def test_epsilon_identities_exact():
    for name, residual in epsilon_identity_residuals().items():
        assert residual == 0, name


def test_cross_product_axioms():
    rng = random.Random(1)
    for _ in range(10):
        u = Vector([Fraction(rng.randint(-5, 5)) for _ in range(7)])
        v = Vector([Fraction(rng.randint(-5, 5)) for _ in range(7)])
        w = cross(u, v)
        # orthogonality to both factors
        assert sum(w[i] * u[i] for i in range(7)) == 0
        assert sum(w[i] * v[i] for i in range(7)) == 0
        # |u x v|^2 = |u|^2 |v|^2 - <u,v>^2
        uu = sum(u[i] * u[i] for i in range(7))
        vv = sum(v[i] * v[i] for i in range(7))
        uv = sum(u[i] * v[i] for i in range(7))
        assert sum(w[i] * w[i] for i in range(7)) == uu * vv - uv * uv


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_two_form_projection_split(seed):
    rng = random.Random(seed)
    b = rand_form(rng, 2)
    b7, b14 = project2(b)
    assert b7 + b14 == b
    # the two pieces are characterized by *(phi ^ beta) eigenvalues 2, -1
    assert hodge_star(PHI.wedge(b7)) == b7.scale(2)
    assert hodge_star(PHI.wedge(b14)) == b14.scale(-1)
    assert form_inner(b7, b14) == 0


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_three_form_projection_split(seed):
    rng = random.Random(seed)
    c = rand_form(rng, 3)
    c1, c7, c27 = project3(c)
    assert c1 + c7 + c27 == c
    # singlet is a multiple of phi, the 7-piece pairs to zero with phi
    assert form_inner(c1, PHI) * PHI == c1.scale(7)
    assert form_inner(c7, PHI) == 0
    assert form_inner(c27, PHI) == 0
    # 27-piece is orthogonal to every *(alpha ^ phi)
    for i in range(1, 8):
        assert form_inner(c27, hodge_star(Form.basis(i).wedge(PHI))) == 0


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_four_form_projections_complement(seed):
    rng = random.Random(seed)
    r = rand_form(rng, 4)
    p1, p7, p27 = project4(r)
    assert p1 + p7 + p27 == r
    s = rand_form(rng, 5)
    q7, q14 = project5(s)
    assert q7 + q14 == s


def test_i_and_j_on_the_model_tensors():
    g = [[Fraction(int(i == j)) for j in range(7)] for i in range(7)]
    assert i_map(g) == PHI.scale(6)
    assert j_map(PHI) == [[Fraction(6 * (i == j)) for j in range(7)] for i in range(7)]


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_j_of_i_identity(seed):
    rng = random.Random(seed)
    h = rand_sym(rng)
    jh = j_map(i_map(h))
    t = sym_trace(h)
    for i in range(7):
        for j in range(7):
            assert jh[i][j] == 8 * h[i][j] + (4 * t if i == j else 0)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_i_map_isometry_on_traceless(seed):
    rng = random.Random(seed)
    h = rand_sym(rng, traceless=True)
    hh = sum(h[i][j] * h[i][j] for i in range(7) for j in range(7))
    assert form_norm_sq(i_map(h)) == 8 * hh


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_lambda14_wedge_square_invariants(seed):
    rng = random.Random(seed)
    b = rand_form(rng, 2)
    _, b14 = project2(b)
    inv = lambda14_invariants(b14)
    n2 = form_norm_sq(b14)
    assert inv["q2"] == n2
    # sextic inequality |beta^3|^2 <= (2/3)|beta|^6
    assert inv["q6"] * 3 <= 2 * n2 ** 3
    # normal form parameters solve the eigenvalue cubic:
    # lam1^2 + lam2^2 + (lam1+lam2)^2 = |beta|^2
    lam1, lam2 = inv["lambda1"], inv["lambda2"]
    s = lam1 * lam1 + lam2 * lam2 + (lam1 + lam2) ** 2
    assert abs(s - float(n2)) <= 1e-9 * max(1.0, float(n2))
    # quartic invariants of the wedge square
    ww = b14.wedge(b14)
    assert form_norm_sq(ww) == n2 * n2
    assert form_inner(ww, STAR_PHI) == -n2
    p1, p7, p27 = project4(ww)
    assert p7.is_zero()
    assert form_norm_sq(p27) == Fraction(6, 7) * n2 * n2


def test_two_form_rank_cases():
    assert two_form_rank(Form.basis(1, 2)) == 2
    assert two_form_rank(Form.basis(1, 2) + Form.basis(3, 4)) == 4
    assert two_form_rank(
        Form.basis(1, 2) + Form.basis(3, 4) + Form.basis(5, 6)
    ) == 6
    assert two_form_rank(Form(2)) == 0


def test_q_pairing_symmetric():
    rng = random.Random(9)
    a = rand_form(rng, 3)
    b = rand_form(rng, 3)
    assert q_pairing(a, b) == q_pairing(b, a)
