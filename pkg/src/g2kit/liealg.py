"""Left-invariant geometry on seven dimensional Lie algebras.

A Lie algebra is described through the dual picture: the differentials
d omega^i of a fixed coframe, constant-coefficient 2-forms.  d^2 = 0 is
equivalent to the Jacobi identity.  On top of that sit the intrinsic
torsion forms of an invariant definite 3-form, the curvature expressed
through them, and an independent curvature oracle that only uses the
Koszul formula for the Levi-Civita connection.  The two routes share no
code beyond the metric itself, which is the point.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .definite import DefiniteStructure, metric_from
from .forms import (
    DIM,
    Form,
    Metric,
    _shuffle_sign,
    form_inner,
    mat_inv,
    mat_vec,
)
from .g2 import PHI
from .scalars import parse_scalar, scalar_to_json


class LieAlgebra7:
    """Seven dimensional Lie algebra given by its coframe differentials."""

    def __init__(self, name: str, differentials):
        d = [Form(2) if f is None else f for f in differentials]
        if len(d) != DIM or any(f.degree != 2 for f in d):
            raise ValueError("need seven 2-forms d(omega^i)")
        self.name = name
        self.d = d

    # -- serialization (schema: d omega^i = sum coeff omega^j ^ omega^k, j<k)

    def to_json(self) -> dict:
        entries = []
        for i, f in enumerate(self.d, start=1):
            terms = []
            for mask in sorted(f.terms):
                j = (mask & -mask).bit_length()
                k = mask.bit_length()
                terms.append({"j": j, "k": k, "coeff": scalar_to_json(f.terms[mask])})
            if terms:
                entries.append({"target": i, "terms": terms})
        return {"name": self.name, "dim": DIM, "d": entries}

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra7":
        if int(data.get("dim", DIM)) != DIM:
            raise ValueError("only dimension 7 is supported")
        diffs = [Form(2) for _ in range(DIM)]
        for entry in data.get("d", []):
            i = int(entry["target"])
            pairs = [
                ((int(t["j"]), int(t["k"])), parse_scalar(t["coeff"]))
                for t in entry["terms"]
            ]
            diffs[i - 1] = Form.from_terms(2, pairs)
        return cls(str(data.get("name", "anonymous")), diffs)

    @classmethod
    def from_file(cls, path: str) -> "LieAlgebra7":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    # -- basic structure

    def structure_constants(self):
        """f[p][a][b] with [e_a, e_b] = sum_p f^p_ab e_p (0-based)."""
        f = [[[0] * DIM for _ in range(DIM)] for _ in range(DIM)]
        for p in range(DIM):
            for mask, c in self.d[p].terms.items():
                a = (mask & -mask).bit_length() - 1
                b = mask.bit_length() - 1
                # d omega^p (e_a, e_b) = -omega^p([e_a, e_b])
                f[p][a][b] = -c
                f[p][b][a] = c
        return f

    def d_form(self, form: Form) -> Form:
        """Exterior derivative of an invariant form."""
        out = Form(form.degree + 1) if form.degree < DIM else Form(DIM)
        if form.degree in (0, DIM):
            return Form(min(form.degree + 1, DIM))
        for mask, c in form.terms.items():
            pos = 0
            for bit in range(DIM):
                if not mask >> bit & 1:
                    continue
                rest = mask & ~(1 << bit)
                di = self.d[bit]
                if di.terms:
                    sgn = c if pos % 2 == 0 else -c
                    out = out + di.wedge(Form(mask.bit_count() - 1, {rest: 1})).scale(
                        sgn
                    )
                pos += 1
        return out

    def jacobi_residual(self) -> float:
        """Largest coefficient of d(d omega^i); zero iff Jacobi holds."""
        return max((self.d_form(f).max_abs() for f in self.d), default=0.0)

    def is_unimodular(self) -> bool:
        f = self.structure_constants()
        return all(
            sum(f[p][a][p] for p in range(DIM)) == 0 for a in range(DIM)
        )


def d_invariant(L: LieAlgebra7, form: Form) -> Form:
    return L.d_form(form)


def codifferential(L: LieAlgebra7, structure: DefiniteStructure, form: Form) -> Form:
    """delta = (-1)^p * d * on p-forms in dimension seven."""
    p = form.degree
    out = structure.star(L.d_form(structure.star(form)))
    return out if p % 2 == 0 else -out


def hodge_laplacian(L: LieAlgebra7, structure: DefiniteStructure, form: Form) -> Form:
    """d delta + delta d with the star of the given structure."""
    p = form.degree
    out = Form(p)
    if p > 0:
        out = out + L.d_form(codifferential(L, structure, form))
    if p < DIM:
        out = out + codifferential(L, structure, L.d_form(form))
    return out


# ---------------------------------------------------------------------------
# torsion


class TorsionForms:
    """The four intrinsic torsion components of an invariant structure."""

    def __init__(self, L, structure, tau0, tau1, tau2, tau3):
        self.L = L
        self.structure = structure
        self.tau0 = tau0
        self.tau1 = tau1
        self.tau2 = tau2
        self.tau3 = tau3

    def norms(self) -> dict:
        st = self.structure
        return {
            "tau0_sq": self.tau0 * self.tau0,
            "tau1_sq": st.norm_sq(self.tau1),
            "tau2_sq": st.norm_sq(self.tau2),
            "tau3_sq": st.norm_sq(self.tau3),
        }

    def reconstruction_residuals(self) -> dict:
        L, st = self.L, self.structure
        s3, s4 = st.sigma, st.star_sigma
        lhs3 = L.d_form(s3)
        rhs3 = (
            s4.scale(self.tau0)
            + self.tau1.wedge(s3).scale(3)
            + st.star(self.tau3)
        )
        lhs4 = L.d_form(s4)
        rhs4 = self.tau1.wedge(s4).scale(4) + self.tau2.wedge(s3)
        p1, p7, p27 = st.project3(self.tau3)
        b7, b14 = st.project2(self.tau2)
        return {
            "d_sigma": (lhs3 - rhs3).max_abs(),
            "d_star_sigma": (lhs4 - rhs4).max_abs(),
            "tau3_purity": max(p1.max_abs(), p7.max_abs()),
            "tau2_purity": b7.max_abs(),
        }

    def torsion_identity_residual(self) -> float:
        """*sigma ^ *(d *sigma) + (*d sigma) ^ sigma = 0."""
        L, st = self.L, self.structure
        lhs = st.star_sigma.wedge(st.star(L.d_form(st.star_sigma))) + st.star(
            L.d_form(st.sigma)
        ).wedge(st.sigma)
        return lhs.max_abs()

    def one_flat(self, tol: float = 0.0) -> bool:
        L = self.L
        return (
            L.d_form(self.structure.sigma).max_abs() <= tol
            and L.d_form(self.structure.star_sigma).max_abs() <= tol
        )


def torsion_forms(L: LieAlgebra7, structure: DefiniteStructure) -> TorsionForms:
    """Extract tau_0..tau_3 from d sigma and d *sigma."""
    st = structure
    s3, s4 = st.sigma, st.star_sigma
    d3 = L.d_form(s3)
    d4 = L.d_form(s4)
    tau0 = st.inner(d3, s4) * Fraction(1, 7)
    tau1 = st.star(st.star(d3).wedge(s3)).scale(Fraction(-1, 12))
    tau3 = st.star(d3 - s4.scale(tau0) - tau1.wedge(s3).scale(3))
    tau2 = -st.star(d4 - tau1.wedge(s4).scale(4))
    return TorsionForms(L, st, tau0, tau1, tau2, tau3)


def scalar_curvature(torsion: TorsionForms):
    """Scalar curvature from the torsion forms alone."""
    L, st = torsion.L, torsion.structure
    delta_tau1 = codifferential(L, st, torsion.tau1).terms.get(0, 0)
    n = torsion.norms()
    return (
        12 * delta_tau1
        + Fraction(21, 8) * n["tau0_sq"]
        + 30 * n["tau1_sq"]
        - Fraction(1, 2) * n["tau2_sq"]
        - Fraction(1, 2) * n["tau3_sq"]
    )


def ricci_torsion_formula(L: LieAlgebra7, structure: DefiniteStructure):
    """Ricci tensor assembled from the intrinsic torsion forms."""
    st = structure
    t = torsion_forms(L, st)
    tau0, tau1, tau2, tau3 = t.tau0, t.tau1, t.tau2, t.tau3
    s3, s4 = st.sigma, st.star_sigma
    delta_tau1 = codifferential(L, st, tau1).terms.get(0, 0)
    n = t.norms()
    trace_coeff = (
        Fraction(3, 2) * delta_tau1
        - Fraction(3, 8) * n["tau0_sq"]
        + 15 * n["tau1_sq"]
        - Fraction(1, 4) * n["tau2_sq"]
        + Fraction(1, 2) * n["tau3_sq"]
    )
    tau1_two = st.star(tau1.wedge(s4))  # = tau1-sharp -| sigma, a 2-form
    x = (
        L.d_form(tau1_two).scale(Fraction(-5, 4))
        + L.d_form(tau2).scale(Fraction(-1, 4))
        + st.star(L.d_form(tau3)).scale(Fraction(1, 4))
        + tau1.wedge(tau1_two).scale(Fraction(5, 2))
        + tau3.scale(Fraction(-1, 8) * tau0)
        + tau1.wedge(tau2).scale(Fraction(1, 4))
        + st.star(tau1.wedge(tau3)).scale(Fraction(3, 4))
        + st.star(tau2.wedge(tau2)).scale(Fraction(1, 8))
        + st.q_pairing(tau3, tau3).scale(Fraction(1, 64))
    )
    jx = st.j_map(x)
    g = st.g
    return [
        [jx[i][k] - trace_coeff * g[i][k] for k in range(DIM)] for i in range(DIM)
    ]


# ---------------------------------------------------------------------------
# the independent curvature oracle


def levi_civita(L: LieAlgebra7, metric: Metric):
    """Christoffel data Gamma[i][j] = components of nabla_{e_i} e_j, from the
    Koszul formula 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>."""
    f = L.structure_constants()
    g = metric.matrix
    ginv = metric.inv()

    def bracket_inner(a, b, l):
        # <[e_a, e_b], e_l>
        return sum(f[p][a][b] * g[p][l] for p in range(DIM) if f[p][a][b] != 0)

    gamma = [[None] * DIM for _ in range(DIM)]
    for i in range(DIM):
        for j in range(DIM):
            rhs = [
                (
                    bracket_inner(i, j, l)
                    - bracket_inner(j, l, i)
                    + bracket_inner(l, i, j)
                )
                / 2
                for l in range(DIM)
            ]
            gamma[i][j] = mat_vec(ginv, rhs)
    return gamma


def ricci_via_connection(L: LieAlgebra7, metric: Metric):
    """Ricci tensor of a left-invariant metric straight from the connection:
    R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z."""
    f = L.structure_constants()
    gamma = levi_civita(L, metric)

    def nabla(i, vec):
        out = [0] * DIM
        for m in range(DIM):
            vm = vec[m]
            if vm == 0:
                continue
            gim = gamma[i][m]
            for l in range(DIM):
                out[l] += vm * gim[l]
        return out

    ric = [[0] * DIM for _ in range(DIM)]
    for j in range(DIM):
        for k in range(DIM):
            total = 0
            for i in range(DIM):
                term = nabla(i, gamma[j][k])[i] - nabla(j, gamma[i][k])[i]
                for m in range(DIM):
                    fm = f[m][i][j]
                    if fm != 0:
                        term -= fm * gamma[m][k][i]
                total += term
            ric[j][k] = total
    return ric


def scalar_via_connection(L: LieAlgebra7, metric: Metric):
    ric = ricci_via_connection(L, metric)
    ginv = metric.inv()
    return sum(ginv[i][j] * ric[i][j] for i in range(DIM) for j in range(DIM))


# ---------------------------------------------------------------------------
# special torsion classes

def closed_structure_report(L: LieAlgebra7, structure: DefiniteStructure) -> dict:
    """Diagnostics for a closed structure (d sigma = 0): the torsion reduces
    to tau2, and d tau2 = (1/7)|tau2|^2 sigma + gamma with gamma of type 27."""
    st = structure
    t = torsion_forms(L, st)
    closed_residual = L.d_form(st.sigma).max_abs()
    tau = t.tau2
    tau_sq = st.norm_sq(tau)
    dtau = L.d_form(tau)
    sigma_coeff = st.inner(dtau, st.sigma) * Fraction(1, 7)
    p1, p7, p27 = st.project3(dtau)
    wedge_sq = st.star(tau.wedge(tau))
    einstein = dtau - st.sigma.scale(Fraction(3, 14) * tau_sq) - wedge_sq.scale(Fraction(1, 2))
    erp = dtau - (st.sigma.scale(tau_sq) + wedge_sq).scale(Fraction(1, 6))

    # Ricci of a closed structure: 1/4 |tau|^2 g - 1/4 j(d tau - 1/2 *(tau^tau))
    scal = Fraction(-1, 2) * tau_sq
    jarg = dtau - wedge_sq.scale(Fraction(1, 2))
    jt = st.j_map(jarg)
    g = st.metric.matrix
    ric = [
        [Fraction(1, 4) * tau_sq * g[i][j] - Fraction(1, 4) * jt[i][j] for j in range(DIM)]
        for i in range(DIM)
    ]
    ginv = st.metric.inv()
    ric0 = [
        [ric[i][j] - Fraction(1, 7) * scal * g[i][j] for j in range(DIM)]
        for i in range(DIM)
    ]
    ric0_sq = sum(
        ginv[i][k] * ginv[j][l] * ric0[i][j] * ric0[k][l]
        for i in range(DIM)
        for j in range(DIM)
        for k in range(DIM)
        for l in range(DIM)
    )
    pinch_ratio = None if scal == 0 else ric0_sq / (Fraction(4, 21) * scal * scal)
    return {
        "closed_residual": closed_residual,
        "tau2": tau,
        "tau2_sq": tau_sq,
        "scalar_curvature": scal,
        "sigma_coefficient": sigma_coeff,
        "gamma": p27,
        "ricci": ric,
        "pinch_ratio": pinch_ratio,
        "lambda7_residual": p7.max_abs(),
        "einstein_residual": einstein.max_abs(),
        "erp_residual": erp.max_abs(),
        "torsion": t,
    }


def erp_residual(L: LieAlgebra7, structure: DefiniteStructure) -> float:
    """Deviation from d tau = (1/6)(|tau|^2 sigma + *(tau ^ tau))."""
    st = structure
    t = torsion_forms(L, st)
    tau = t.tau2
    rhs = (st.sigma.scale(st.norm_sq(tau)) + st.star(tau.wedge(tau))).scale(
        Fraction(1, 6)
    )
    return (L.d_form(tau) - rhs).max_abs()


def natural_equation_residual(L: LieAlgebra7, structure: DefiniteStructure, lam) -> float:
    """Deviation from d tau = (1/7)|tau|^2 sigma
    + lam ((1/7)|tau|^2 sigma + *(tau ^ tau))."""
    st = structure
    t = torsion_forms(L, st)
    tau = t.tau2
    tau_sq = st.norm_sq(tau)
    base = st.sigma.scale(Fraction(1, 7) * tau_sq)
    rhs = base + (base + st.star(tau.wedge(tau))).scale(lam)
    return (L.d_form(tau) - rhs).max_abs()


# ---------------------------------------------------------------------------
# builtin algebras


def _fernandez() -> LieAlgebra7:
    diffs = [Form(2) for _ in range(DIM)]
    diffs[5] = Form.basis(1, 2)
    diffs[6] = Form.basis(1, 3)
    return LieAlgebra7("fernandez", diffs)


def _erp_sl2c() -> LieAlgebra7:
    """Solvable algebra acting simply transitively on the homogeneous
    extremally pinched example: the Iwasawa subgroup of SL(2,C) extended
    by the translations of C^2, in the coframe adapted to phi."""
    two = Fraction(2)
    diffs = [
        Form(2),
        Form.basis(1, 2).scale(two),
        Form.basis(1, 3).scale(two),
        Form.basis(1, 4) + Form.basis(2, 7).scale(two) + Form.basis(3, 6).scale(two),
        Form.basis(1, 5) + Form.basis(2, 6).scale(two) - Form.basis(3, 7).scale(two),
        -Form.basis(1, 6),
        -Form.basis(1, 7),
    ]
    return LieAlgebra7("erp-sl2c", diffs)


def _su2_r4() -> LieAlgebra7:
    diffs = [
        -Form.basis(2, 3),
        Form.basis(1, 3),
        -Form.basis(1, 2),
        Form(2),
        Form(2),
        Form(2),
        Form(2),
    ]
    return LieAlgebra7("su2-r4", diffs)


_BUILTINS = {
    "abelian": lambda: LieAlgebra7("abelian", [Form(2) for _ in range(DIM)]),
    "fernandez": _fernandez,
    "erp-sl2c": _erp_sl2c,
    "su2-r4": _su2_r4,
}


def builtin_algebra(name: str) -> LieAlgebra7:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise KeyError(
            f"unknown algebra {name!r}; builtins: {', '.join(sorted(_BUILTINS))}"
        ) from None


def builtin_names():
    return sorted(_BUILTINS)
