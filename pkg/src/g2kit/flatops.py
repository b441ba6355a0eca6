"""First-order operator calculus of the torsion-free flat model.

Forms on flat seven-space with polynomial coefficients and the constant
model 3-form.  The exterior derivative, restricted to the four reference
modules (functions, 1-forms, 2-forms of the 14-type, 3-forms of the
27-type), decomposes into a family of first order operators d^p_q
between those modules.  Each operator is defined by its defining row of
the exterior-derivative table; the remaining table rows, the fourteen
second-order identities equivalent to d^2 = 0, and the expressions of
the four Hodge Laplacians through the d^p_q are then verified exactly
in rational arithmetic on random polynomial sections.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .forms import DIM, Form, _masks_of_degree, form_inner, hodge_star, volume_form
from .g2 import PHI, STAR_PHI, project2, project3, project4
from .poly import Poly

#: reference degree of each module label
MODULE_DEGREE = {1: 0, 7: 1, 14: 2, 27: 3}

#: the operator pairs that vanish identically
ZERO_OPERATORS = ((1, 27), (27, 1), (1, 14), (14, 1), (1, 1), (14, 14))


# ---------------------------------------------------------------------------
# polynomial-coefficient exterior calculus

def d_poly(a: Form) -> Form:
    """Exterior derivative of a form with polynomial coefficients."""
    out = Form(min(a.degree + 1, DIM))
    for mask, p in a.terms.items():
        base = Form(a.degree, {mask: Poly.constant(1)})
        for i in range(1, DIM + 1):
            dp = p.diff(i)
            if dp:
                out = out + Form(1, {1 << (i - 1): dp}).wedge(base)
    return out


def codifferential_poly(a: Form) -> Form:
    """Flat codifferential: (-1)^p * star d star on p-forms."""
    if a.degree == 0:
        return Form(0)
    out = hodge_star(d_poly(hodge_star(a)))
    return out if a.degree % 2 == 0 else out.scale(-1)


def laplacian_poly(a: Form) -> Form:
    """Flat Hodge Laplacian d delta + delta d (equal to minus the
    componentwise coordinate Laplacian in this convention)."""
    out = codifferential_poly(d_poly(a)) if a.degree < DIM else Form(a.degree)
    if a.degree > 0:
        out = out + d_poly(codifferential_poly(a))
    return out


def as_scalar(a: Form) -> Poly:
    """The coefficient of a degree-0 form as a polynomial."""
    if a.degree != 0:
        raise ValueError("expected a degree-0 form")
    c = a.terms.get(0, 0)
    return c if isinstance(c, Poly) else Poly.constant(c)


def scale_by_poly(a: Form, p: Poly) -> Form:
    return a.map_coeffs(lambda c: p * c)


def is_zero_form(a: Form) -> bool:
    return all(c == 0 for c in a.terms.values())


def residual_size(a: Form) -> Fraction:
    """Largest absolute polynomial coefficient appearing in the form."""
    worst = Fraction(0)
    for c in a.terms.values():
        worst = max(worst, abs(c) if isinstance(c, Poly) else abs(Fraction(c)))
    return worst


# ---------------------------------------------------------------------------
# typed sections

class TypedSection:
    """A polynomial form lying pointwise in one of the four reference
    modules: label 1 (functions), 7 (1-forms), 14 (2-forms of 14-type),
    27 (3-forms of 27-type)."""

    __slots__ = ("label", "payload")

    def __init__(self, label: int, payload: Form, check: bool = True):
        if label not in MODULE_DEGREE:
            raise ValueError("label must be one of 1, 7, 14, 27")
        if payload.degree != MODULE_DEGREE[label]:
            raise ValueError(
                f"label {label} requires degree {MODULE_DEGREE[label]}"
            )
        self.label = label
        self.payload = payload
        if check and not self.is_pure():
            raise ValueError(f"payload is not pointwise of type {label}")

    def is_pure(self) -> bool:
        if self.label in (1, 7):
            return True
        if self.label == 14:
            b7, _ = project2(self.payload)
            return is_zero_form(b7)
        g1, g7, _ = project3(self.payload)
        return is_zero_form(g1) and is_zero_form(g7)


# ---------------------------------------------------------------------------
# the operators, each from its defining table row

def d17(f: Form) -> Form:
    return d_poly(f)


def d77(alpha: Form) -> Form:
    return hodge_star(d_poly(alpha.wedge(STAR_PHI)))


def d71(alpha: Form) -> Form:
    return hodge_star(d_poly(hodge_star(alpha))).scale(-1)


def d714(alpha: Form) -> Form:
    _, b14 = project2(d_poly(alpha))
    return b14


def d727(alpha: Form) -> Form:
    _, _, g27 = project3(d_poly(hodge_star(alpha.wedge(STAR_PHI))))
    return g27


def d147(beta: Form) -> Form:
    return hodge_star(d_poly(beta).wedge(PHI)).scale(-1)


def d1427(beta: Form) -> Form:
    _, _, g27 = project3(d_poly(beta))
    return g27


def d277(gamma: Form) -> Form:
    _, g7, _ = project3(hodge_star(d_poly(gamma)))
    return hodge_star(g7.wedge(PHI)).scale(-1)


def d2727(gamma: Form) -> Form:
    _, _, g27 = project3(hodge_star(d_poly(gamma)))
    return g27


def d2714(gamma: Form) -> Form:
    _, b14 = project2(hodge_star(d_poly(hodge_star(gamma))))
    return b14.scale(-1)


OPERATORS = {
    (1, 7): d17,
    (7, 1): d71,
    (7, 7): d77,
    (7, 14): d714,
    (7, 27): d727,
    (14, 7): d147,
    (14, 27): d1427,
    (27, 7): d277,
    (27, 14): d2714,
    (27, 27): d2727,
}


def dpq(p_label: int, q_label: int, s: TypedSection) -> TypedSection:
    """Apply the first order operator from module p to module q."""
    if (p_label, q_label) in ZERO_OPERATORS:
        raise ValueError(f"d^{p_label}_{q_label} vanishes identically")
    fn = OPERATORS.get((p_label, q_label))
    if fn is None:
        raise ValueError(f"no operator d^{p_label}_{q_label}")
    if s.label != p_label:
        raise ValueError("section label does not match the operator source")
    return TypedSection(q_label, fn(s.payload))


# ---------------------------------------------------------------------------
# random typed polynomial sections

def _random_poly(rng: random.Random, max_degree: int, n_terms: int = 2) -> Poly:
    out = Poly()
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        exps = [0] * DIM
        for _ in range(deg):
            exps[rng.randrange(DIM)] += 1
        c = Fraction(rng.randint(-12, 12), 4)
        out = out + Poly.monomial(exps, c)
    return out


def _random_form(
    rng: random.Random, degree: int, max_degree: int, n_comps: int | None = None
) -> Form:
    masks = _masks_of_degree(degree)
    if n_comps is not None and n_comps < len(masks):
        masks = rng.sample(masks, n_comps)
    terms = {}
    for mask in masks:
        p = _random_poly(rng, max_degree)
        if p:
            terms[mask] = p
    return Form(degree, terms)


def random_section(
    rng: random.Random, label: int, max_degree: int, n_comps: int | None = None
) -> TypedSection:
    deg = MODULE_DEGREE[label]
    raw = _random_form(rng, deg, max_degree, n_comps)
    if label == 14:
        _, raw = project2(raw)
    elif label == 27:
        _, _, raw = project3(raw)
    return TypedSection(label, raw, check=False)


# ---------------------------------------------------------------------------
# table verification

def _record(report: dict, key: str, residual: Fraction):
    prev = report.get(key, Fraction(0))
    report[key] = max(prev, residual)


def derivative_decomposition_residuals(trials: int = 20, max_poly_degree: int = 2, seed: int = 0) -> dict:
    """Verify every row of the exterior-derivative table, plus the six
    vanishing operators, on random typed polynomial sections.  All
    residuals are exact rationals and should be zero."""
    rng = random.Random(seed)
    rep: dict = {}
    vol = volume_form(1)
    for _ in range(trials):
        f = random_section(rng, 1, max_poly_degree).payload
        a = random_section(rng, 7, max_poly_degree).payload
        b = random_section(rng, 14, max_poly_degree).payload
        g = random_section(rng, 27, max_poly_degree).payload
        df = d17(f)
        _record(rep, "d f = d17 f", residual_size(d_poly(f) - df))
        _record(
            rep,
            "d(f sigma) = d17 f ^ sigma",
            residual_size(d_poly(scale_by_poly(PHI, as_scalar(f))) - df.wedge(PHI)),
        )
        _record(
            rep,
            "d(f *sigma) = d17 f ^ *sigma",
            residual_size(
                d_poly(scale_by_poly(STAR_PHI, as_scalar(f))) - df.wedge(STAR_PHI)
            ),
        )

        a77, a71, a714, a727 = d77(a), d71(a), d714(a), d727(a)
        _record(
            rep,
            "d a = 1/3 *(d77 a ^ *sigma) + d714 a",
            residual_size(
                d_poly(a)
                - hodge_star(a77.wedge(STAR_PHI)).scale(Fraction(1, 3))
                - a714
            ),
        )
        _record(
            rep,
            "d*(a ^ *sigma) = -3/7 d71 a sigma - 1/2 *(d77 a ^ sigma) + d727 a",
            residual_size(
                d_poly(hodge_star(a.wedge(STAR_PHI)))
                - scale_by_poly(PHI, as_scalar(a71)).scale(Fraction(-3, 7))
                - hodge_star(a77.wedge(PHI)).scale(Fraction(-1, 2))
                - a727
            ),
        )
        _record(
            rep,
            "d*(a ^ sigma) = 4/7 d71 a *sigma + 1/2 d77 a ^ sigma + *d727 a",
            residual_size(
                d_poly(hodge_star(a.wedge(PHI)))
                - scale_by_poly(STAR_PHI, as_scalar(a71)).scale(Fraction(4, 7))
                - a77.wedge(PHI).scale(Fraction(1, 2))
                - hodge_star(a727)
            ),
        )
        _record(
            rep,
            "d(a ^ sigma) = 2/3 d77 a ^ *sigma - *d714 a",
            residual_size(
                d_poly(a.wedge(PHI))
                - a77.wedge(STAR_PHI).scale(Fraction(2, 3))
                + hodge_star(a714)
            ),
        )
        _record(
            rep,
            "d(a ^ *sigma) = *d77 a",
            residual_size(d_poly(a.wedge(STAR_PHI)) - hodge_star(a77)),
        )
        _record(
            rep,
            "d(*a) = -d71 a *1",
            residual_size(
                d_poly(hodge_star(a)) + scale_by_poly(vol, as_scalar(a71))
            ),
        )

        b147, b1427 = d147(b), d1427(b)
        _record(
            rep,
            "d b = 1/4 *(d147 b ^ sigma) + d1427 b",
            residual_size(
                d_poly(b)
                - hodge_star(b147.wedge(PHI)).scale(Fraction(1, 4))
                - b1427
            ),
        )
        _record(
            rep,
            "d(*b) = *d147 b",
            residual_size(d_poly(hodge_star(b)) - hodge_star(b147)),
        )

        g277, g2714, g2727 = d277(g), d2714(g), d2727(g)
        _record(
            rep,
            "d g = 1/4 d277 g ^ sigma + *d2727 g",
            residual_size(
                d_poly(g)
                - g277.wedge(PHI).scale(Fraction(1, 4))
                - hodge_star(g2727)
            ),
        )
        _record(
            rep,
            "d(*g) = -1/3 d277 g ^ *sigma - *d2714 g",
            residual_size(
                d_poly(hodge_star(g))
                + g277.wedge(STAR_PHI).scale(Fraction(1, 3))
                + hodge_star(g2714)
            ),
        )

        # the six vanishing operators, in their concrete manifestations
        p1, _, p27 = project4(d_poly(scale_by_poly(PHI, as_scalar(f))))
        _record(rep, "zero d1_1", residual_size(p1))
        _record(rep, "zero d1_27", residual_size(p27))
        _, p14 = project2(hodge_star(d_poly(scale_by_poly(STAR_PHI, as_scalar(f)))))
        _record(rep, "zero d1_14", residual_size(p14))
        inner_db = form_inner(d_poly(b), PHI)
        _record(
            rep,
            "zero d14_1",
            abs(inner_db) if isinstance(inner_db, Poly) else abs(Fraction(inner_db)),
        )
        _record(
            rep,
            "zero d14_14",
            residual_size(
                hodge_star(d_poly(hodge_star(b))) + hodge_star(d_poly(b).wedge(PHI))
            ),
        )
        g1_dg, _, _ = project3(hodge_star(d_poly(g)))
        _record(rep, "zero d27_1", residual_size(g1_dg))
        _record(rep, "d^2 = 0", residual_size(d_poly(d_poly(a))))
    return {k: _fmt(v) for k, v in rep.items()} | {"trials": trials}


COMPOSITION_IDENTITIES = (
    # (name, source type bundle, [(coefficient, outer, inner), ...])
    ("d77 d17 = 0", 1, [(1, (7, 7), (1, 7))]),
    ("d714 d17 = 0", 1, [(1, (7, 14), (1, 7))]),
    ("d71 d77 = 0", 7, [(1, (7, 1), (7, 7))]),
    (
        "d147 d714 = 2/3 d77 d77",
        7,
        [(1, (14, 7), (7, 14)), (Fraction(-2, 3), (7, 7), (7, 7))],
    ),
    (
        "d277 d727 = d77 d77 + 12/7 d17 d71",
        7,
        [
            (1, (27, 7), (7, 27)),
            (-1, (7, 7), (7, 7)),
            (Fraction(-12, 7), (1, 7), (7, 1)),
        ],
    ),
    (
        "d714 d77 + 2 d2714 d727 = 0",
        7,
        [(1, (7, 14), (7, 7)), (2, (27, 14), (7, 27))],
    ),
    (
        "3 d1427 d714 + d727 d77 = 0",
        7,
        [(3, (14, 27), (7, 14)), (1, (7, 27), (7, 7))],
    ),
    (
        "2 d2727 d727 - d727 d77 = 0",
        7,
        [(2, (27, 27), (7, 27)), (-1, (7, 27), (7, 7))],
    ),
    ("d71 d147 = 0", 14, [(1, (7, 1), (14, 7))]),
    (
        "d77 d147 + 2 d277 d1427 = 0",
        14,
        [(1, (7, 7), (14, 7)), (2, (27, 7), (14, 27))],
    ),
    (
        "d727 d147 + 4 d2727 d1427 = 0",
        14,
        [(1, (7, 27), (14, 7)), (4, (27, 27), (14, 27))],
    ),
    (
        "3 d147 d2714 + d77 d277 = 0",
        27,
        [(3, (14, 7), (27, 14)), (1, (7, 7), (27, 7))],
    ),
    (
        "2 d277 d2727 - d77 d277 = 0",
        27,
        [(2, (27, 7), (27, 27)), (-1, (7, 7), (27, 7))],
    ),
    (
        "d714 d277 + 4 d2714 d2727 = 0",
        27,
        [(1, (7, 14), (27, 7)), (4, (27, 14), (27, 27))],
    ),
)


def composition_identity_residuals(trials: int = 50, max_poly_degree: int = 2, seed: int = 0) -> dict:
    """Verify the fourteen second-order identities (the content of
    d^2 = 0 in the typed calculus) exactly on random sections."""
    rng = random.Random(seed)
    rep: dict = {}
    for _ in range(trials):
        sections = {
            lbl: random_section(rng, lbl, max_poly_degree).payload
            for lbl in (1, 7, 14, 27)
        }
        for name, src, combo in COMPOSITION_IDENTITIES:
            s = sections[src]
            cache: dict = {}
            acc = None
            for coeff, outer, inner in combo:
                if inner not in cache:
                    cache[inner] = OPERATORS[inner](s)
                term = OPERATORS[outer](cache[inner]).scale(coeff)
                acc = term if acc is None else acc + term
            _record(rep, name, residual_size(acc))
    return {k: _fmt(v) for k, v in rep.items()} | {"trials": trials}


def laplacian_formula_residuals(trials: int = 20, max_poly_degree: int = 2, seed: int = 0) -> dict:
    """Verify the expressions of the four Hodge Laplacians through the
    typed first-order operators, exactly on random sections."""
    rng = random.Random(seed)
    rep: dict = {}
    for _ in range(trials):
        f = random_section(rng, 1, max_poly_degree).payload
        a = random_section(rng, 7, max_poly_degree).payload
        b = random_section(rng, 14, max_poly_degree).payload
        g = random_section(rng, 27, max_poly_degree).payload
        _record(
            rep,
            "Lap f = d71 d17 f",
            residual_size(laplacian_poly(f) - d71(d17(f))),
        )
        _record(
            rep,
            "Lap a = (d77 d77 + d17 d71) a",
            residual_size(laplacian_poly(a) - d77(d77(a)) - d17(d71(a))),
        )
        _record(
            rep,
            "Lap b = (5/4 d714 d147 + d2714 d1427) b",
            residual_size(
                laplacian_poly(b)
                - d714(d147(b)).scale(Fraction(5, 4))
                - d2714(d1427(b))
            ),
        )
        _record(
            rep,
            "Lap g = (7/12 d727 d277 + d1427 d2714 + d2727 d2727) g",
            residual_size(
                laplacian_poly(g)
                - d727(d277(g)).scale(Fraction(7, 12))
                - d1427(d2714(g))
                - d2727(d2727(g))
            ),
        )
        # convention check: on functions the flat Hodge Laplacian is
        # minus the sum of second coordinate derivatives
        fp = as_scalar(f)
        minus_coord = Poly()
        for i in range(1, DIM + 1):
            minus_coord = minus_coord - fp.diff(i).diff(i)
        _record(
            rep,
            "Lap f = -sum d_i^2 f",
            residual_size(laplacian_poly(f) - Form(0, {0: minus_coord})),
        )
    return {k: _fmt(v) for k, v in rep.items()} | {"trials": trials}


def boundary_window() -> Poly:
    """The product of (1 - x_i^2), vanishing on the boundary of the
    symmetric box [-1, 1]^7."""
    w = Poly.constant(1)
    for i in range(1, DIM + 1):
        x = Poly.variable(i)
        w = w * (Poly.constant(1) - x * x)
    return w


def adjointness_report(trials: int = 5, max_poly_degree: int = 2, seed: int = 0) -> dict:
    """For each nonzero operator pair, the exact integral over the
    symmetric box of <d^p_q s, t> - <s, d^q_p t> with the plain
    exterior-form inner products, where s carries a factor vanishing on
    the boundary so that the divergence term integrates to zero.  A zero
    residual realizes the formal adjointness (d^p_q)* = d^q_p; with this
    windowing the residuals vanish exactly for every pair, with no extra
    normalization factor on any module."""
    rng = random.Random(seed)
    rep: dict = {}
    w = boundary_window()
    pairs = [(p, q) for (p, q) in OPERATORS if (q, p) in OPERATORS]
    # adjointness is bilinear, so sparse low-degree sections cover it;
    # the degree-14 window dominates the polynomial sizes regardless
    deg = min(max_poly_degree, 1)
    for _ in range(trials):
        sections = {
            lbl: random_section(rng, lbl, deg, n_comps=2).payload
            for lbl in (1, 7, 14, 27)
        }
        for p, q in pairs:
            s = scale_by_poly(sections[p], w)
            t = sections[q]
            lhs = form_inner(OPERATORS[(p, q)](s), t)
            rhs = form_inner(s, OPERATORS[(q, p)](t))
            diff = lhs - rhs
            val = diff.integral_box() if isinstance(diff, Poly) else Fraction(diff)
            _record(rep, f"d{p}_{q} vs d{q}_{p}", abs(val))
    return {k: _fmt(v) for k, v in rep.items()} | {"trials": trials}


def _fmt(v):
    if isinstance(v, int):
        return v
    return "0" if v == 0 else str(v)
