"""Definite 3-forms and their induced metrics.

A 3-form sigma on R^7 is definite when it lies in the open GL(7) orbit
of the model form phi.  The bilinear pairing

    b(v, w) vol = (v -| sigma) ^ (w -| sigma) ^ sigma

is then definite, and the induced metric and volume are normalized so
that sigma = phi gives the identity metric and the standard volume
(equivalently j(phi) = 6 g).  Scaling behaves as sigma -> lambda^3 sigma
==> g -> lambda^2 g, vol -> lambda^7 vol.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .forms import (
    BASIS_VECTORS,
    DIM,
    FULL_MASK,
    Form,
    Metric,
    Vector,
    flat,
    form_inner,
    form_norm_sq,
    hodge_star,
    mat_vec,
    minor_det,
    sharp,
    volume_form,
)
from .scalars import is_exact, scalar_nth_root, tolerance


class NonDefiniteError(ValueError):
    """Raised when a 3-form fails to be definite."""


def pairing_matrix(sigma: Form):
    """The symmetric matrix b with (e_i -| s)^(e_j -| s)^s = b_ij e^1..7."""
    if sigma.degree != 3:
        raise ValueError("expected a 3-form")
    contr = [sigma.contract(v) for v in BASIS_VECTORS]
    b = [[0] * DIM for _ in range(DIM)]
    for i in range(DIM):
        for j in range(i, DIM):
            val = contr[i].wedge(contr[j]).wedge(sigma).terms.get(FULL_MASK, 0)
            b[i][j] = val
            b[j][i] = val
    return b


def _leading_minor_signs(b):
    """Signs of the leading principal minors (exact when entries are)."""
    signs = []
    for k in range(1, DIM + 1):
        idx = list(range(k))
        d = minor_det(b, idx, idx)
        df = float(d)
        signs.append(0 if df == 0 else (1 if df > 0 else -1))
    return signs


def definiteness_margin(b) -> float:
    """Smallest |eigenvalue| of b normalized by the largest; in [0, 1]."""
    arr = np.array([[float(x) for x in row] for row in b])
    ev = np.abs(np.linalg.eigvalsh(arr))
    top = ev.max()
    if top == 0.0:
        return 0.0
    return float(ev.min() / top)


def is_definite(sigma: Form) -> bool:
    b = pairing_matrix(sigma)
    signs = _leading_minor_signs(b)
    if all(s == 1 for s in signs):
        return True
    # negative definite b: leading minors alternate starting with -
    return all(s == (-1) ** k for k, s in enumerate(signs, start=1))


class DefiniteStructure:
    """A definite 3-form with its induced metric, volume and Hodge star."""

    def __init__(self, sigma: Form, metric: Metric, s, orientation: int, margin: float):
        self.sigma = sigma
        self.metric = metric
        self.s = s  # vol = s * e^{1..7}; sign(s) = orientation
        self.orientation = orientation
        self.margin = margin
        self.vol = volume_form(s)
        self._star_sigma = None
        self._raised = None

    @property
    def g(self):
        return self.metric.matrix

    def star(self, a: Form) -> Form:
        return hodge_star(
            a,
            self.metric,
            self.orientation,
            scale=self.s if self.orientation > 0 else -self.s,
        )

    @property
    def star_sigma(self) -> Form:
        """The dual 4-form *sigma."""
        if self._star_sigma is None:
            self._star_sigma = self.star(self.sigma)
        return self._star_sigma

    def inner(self, a: Form, b: Form):
        return form_inner(a, b, self.metric)

    def norm_sq(self, a: Form):
        return form_inner(a, a, self.metric)

    def flat(self, v: Vector) -> Form:
        return flat(v, self.metric)

    def sharp(self, alpha: Form) -> Vector:
        return sharp(alpha, self.metric)

    # -- pointwise algebra transported to this structure

    def i_map(self, h) -> Form:
        """Symmetric matrix to 3-form; i(g) = 6 sigma."""
        acc = Form(3)
        images = [self.star(Form.basis(j).wedge(self.star_sigma)) for j in range(1, 8)]
        for i in range(1, 8):
            ei = Form.basis(i)
            for j in range(1, 8):
                hij = h[i - 1][j - 1]
                if hij == 0:
                    continue
                acc = acc + ei.wedge(images[j - 1]).scale(2 * hij)
        return acc

    def j_map(self, gamma: Form):
        """3-form to symmetric matrix; j(sigma) = 6 g."""
        contr = [self.sigma.contract(v) for v in BASIS_VECTORS]
        out = [[0] * DIM for _ in range(DIM)]
        for a in range(DIM):
            for b in range(a, DIM):
                top = contr[a].wedge(contr[b]).wedge(gamma).terms.get(FULL_MASK, 0)
                val = top / self.s
                out[a][b] = val
                out[b][a] = val
        return out

    def project2(self, beta: Form):
        st = self.star(beta.wedge(self.sigma))
        third = Fraction(1, 3)
        return (beta + st).scale(third), (beta.scale(2) - st).scale(third)

    def project3(self, gamma: Form):
        c1 = self.inner(gamma, self.sigma) / self.norm_sq(self.sigma)
        g1 = self.sigma.scale(c1)
        alpha = self.star(gamma.wedge(self.sigma)).scale(Fraction(-1, 4))
        g7 = self.star(alpha.wedge(self.sigma))
        return g1, g7, gamma - g1 - g7

    def q_pairing(self, alpha: Form, beta: Form) -> Form:
        """Frame independent form of the quartic pairing: the dual 4-form
        with all four indices raised, contracted into interior products of
        *alpha and *beta."""
        sa, sb = self.star(alpha), self.star(beta)
        if not sa.terms or not sb.terms:
            return Form(3)
        raised = self._raised_dual()
        ca = {}
        cb = {}
        for i in range(DIM):
            for j in range(i + 1, DIM):
                ca[(i, j)] = sa.contract(BASIS_VECTORS[i]).contract(BASIS_VECTORS[j])
                cb[(i, j)] = sb.contract(BASIS_VECTORS[i]).contract(BASIS_VECTORS[j])
        total = Form(4)
        for (i, j, k, l), t in raised.items():
            total = total + ca[(i, j)].wedge(cb[(k, l)]).scale(4 * t)
        return self.star(total)

    def _raised_dual(self):
        """Components of *sigma with all four indices raised by g^{-1},
        indexed by sorted pairs (i<j, k<l); cached per structure."""
        if self._raised is not None:
            return self._raised
        ginv = self.metric.inv()
        psi = [
            (tuple(t - 1 for t in _mask_idx(mask)), c)
            for mask, c in self.star_sigma.terms.items()
        ]
        raised = {}
        exact = all(is_exact(x) for row in ginv for x in row) and all(
            is_exact(c) for _, c in psi
        )
        if exact:
            for i in range(DIM):
                for j in range(i + 1, DIM):
                    for k in range(DIM):
                        for l in range(k + 1, DIM):
                            tot = 0
                            for rows, c in psi:
                                tot = tot + c * self.metric.inv_minor(
                                    rows, (i, j, k, l)
                                )
                            if tot != 0:
                                raised[(i, j, k, l)] = tot
        else:
            eps = np.zeros((DIM,) * 4)
            for rows, c in psi:
                for perm, sign in _S4:
                    eps[tuple(rows[t] for t in perm)] = sign * float(c)
            g = np.array([[float(x) for x in row] for row in ginv])
            up = np.einsum("abcd,ai,bj,ck,dl->ijkl", eps, g, g, g, g)
            for i in range(DIM):
                for j in range(i + 1, DIM):
                    for k in range(DIM):
                        for l in range(k + 1, DIM):
                            v = up[i, j, k, l]
                            if v != 0.0:
                                raised[(i, j, k, l)] = v
        self._raised = raised
        return raised


def _mask_idx(mask):
    return tuple(i + 1 for i in range(DIM) if mask >> i & 1)


def _perm_sign(perm):
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


_S4 = [(p, _perm_sign(p)) for p in itertools.permutations(range(4))]


def metric_from(sigma: Form) -> DefiniteStructure:
    """Extract the metric, volume and orientation of a definite 3-form."""
    b = pairing_matrix(sigma)
    signs = _leading_minor_signs(b)
    pos = all(s == 1 for s in signs)
    neg = all(s == (-1) ** k for k, s in enumerate(signs, start=1))
    if not (pos or neg):
        raise NonDefiniteError("3-form is not definite")
    det_b = minor_det(b, list(range(DIM)), list(range(DIM)))
    ratio = (
        Fraction(det_b) / Fraction(6) ** DIM
        if is_exact(det_b)
        else float(det_b) / 6.0**DIM
    )
    s = scalar_nth_root(ratio, 9)
    inv6s = (
        Fraction(1, 6) / s if is_exact(s) and is_exact(det_b) else 1.0 / (6.0 * float(s))
    )
    gmat = [[inv6s * b[i][j] for j in range(DIM)] for i in range(DIM)]
    metric = Metric(gmat)
    orientation = 1 if float(s) > 0 else -1
    return DefiniteStructure(sigma, metric, s, orientation, definiteness_margin(b))


# ---------------------------------------------------------------------------
# linearization and deformations


def metric_linearization(structure: DefiniteStructure, psi: Form):
    """Derivative of the induced metric in the direction psi:
    G'(sigma)(psi) = 1/2 j(psi) - 1/3 *(psi ^ *sigma) g."""
    j = structure.j_map(psi)
    coeff = psi.wedge(structure.star_sigma).terms.get(FULL_MASK, 0) / structure.s
    g = structure.g
    return [
        [j[i][k] / 2 - coeff * g[i][k] / 3 for k in range(DIM)] for i in range(DIM)
    ]


def same_metric_family(structure: DefiniteStructure, a, alpha: Form) -> Form:
    """The definite forms sharing the metric and orientation of sigma:
    (a^2 - |alpha|^2) sigma + 2a *(alpha ^ sigma) + i(alpha o alpha),
    subject to a^2 + |alpha|^2 = 1."""
    n2 = structure.norm_sq(alpha)
    if abs(float(a * a + n2) - 1.0) > max(tolerance(), 1e-12):
        raise ValueError("family parameters must satisfy a^2 + |alpha|^2 = 1")
    part1 = structure.sigma.scale(a * a - n2)
    part2 = structure.star(alpha.wedge(structure.sigma)).scale(2 * a)
    # i(alpha o alpha) = 2 alpha ^ *(alpha ^ *sigma)
    part3 = alpha.wedge(structure.star(alpha.wedge(structure.star_sigma))).scale(2)
    return part1 + part2 + part3


def deformation_split(structure: DefiniteStructure, psi: Form):
    """Split a 3-form as psi = 3 f0 sigma + *(f1 ^ sigma) + f3 with f3 of
    pure type 27; returns (f0, f1, f3)."""
    f0 = structure.inner(psi, structure.sigma) * Fraction(1, 21)
    f1 = structure.star(psi.wedge(structure.sigma)).scale(Fraction(-1, 4))
    f3 = psi - structure.sigma.scale(3 * f0) - structure.star(f1.wedge(structure.sigma))
    return f0, f1, f3


def predicted_derivatives(structure: DefiniteStructure, f0, f1: Form, f3: Form):
    """First order responses to sigma-dot = 3 f0 sigma + *(f1 ^ sigma) + f3:
    the dual 4-form, the volume, and the metric."""
    dual_dot = (
        structure.star_sigma.scale(4 * f0)
        + f1.wedge(structure.sigma)
        - structure.star(f3)
    )
    vol_dot = structure.vol.scale(7 * f0)
    j3 = structure.j_map(f3)
    g = structure.g
    g_dot = [
        [2 * f0 * g[i][k] + j3[i][k] / 2 for k in range(DIM)] for i in range(DIM)
    ]
    return {"star_sigma_dot": dual_dot, "vol_dot": vol_dot, "g_dot": g_dot}


def taylor_volume(b0, b1: Form, b3: Form):
    """Second order volume expansion at the model point for
    sigma = phi + (3 b0 phi + *(b1 ^ phi) + b3), b3 of type 27:
    vol = 1 + 7 b0 + 14 b0^2 + (2/3)|b1|^2 - (1/6)|b3|^2 + O(3)."""
    return (
        1
        + 7 * b0
        + 14 * b0 * b0
        + Fraction(2, 3) * form_norm_sq(b1)
        - Fraction(1, 6) * form_norm_sq(b3)
    )


def ricci_eigenvalues(ric, metric: Metric):
    """Eigenvalues of the Ricci endomorphism g^{-1} Ric, ascending."""
    r = np.array([[float(x) for x in row] for row in ric])
    # eigenvalues of g^{-1} Ric = eigenvalues of g^{-1/2} Ric g^{-1/2}
    gmat = np.array([[float(x) for x in row] for row in metric.matrix])
    w, v = np.linalg.eigh(gmat)
    g_half_inv = v @ np.diag(1.0 / np.sqrt(w)) @ v.T
    sym = g_half_inv @ r @ g_half_inv
    return sorted(np.linalg.eigvalsh(sym).tolist())
