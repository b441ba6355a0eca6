"""The model G2-structure on R^7 and its representation theory.

The associative 3-form phi and its dual 4-form are fixed once; every
epsilon table is generated from their expansions at import time rather
than entered by hand.  Type projections for 2- and 3-forms, the i and j
maps between symmetric tensors and 3-forms, and the quartic pairing Q
all live here.  Everything is exact over the rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .forms import (
    BASIS_VECTORS,
    DIM,
    _shuffle_sign,
    Form,
    Vector,
    form_inner,
    form_norm_sq,
    hodge_star,
    indices_of,
    mask_of,
    sorted_insertion,
)

# The associative form and its Hodge dual in the standard frame.
PHI = Form.from_terms(
    3,
    [
        ((1, 2, 3), Fraction(1)),
        ((1, 4, 5), Fraction(1)),
        ((1, 6, 7), Fraction(1)),
        ((2, 4, 6), Fraction(1)),
        ((2, 5, 7), Fraction(-1)),
        ((3, 4, 7), Fraction(-1)),
        ((3, 5, 6), Fraction(-1)),
    ],
)

STAR_PHI = hodge_star(PHI)


def _build_eps3():
    table = [[[0] * (DIM + 1) for _ in range(DIM + 1)] for _ in range(DIM + 1)]
    for i in range(1, 8):
        for j in range(1, 8):
            for k in range(1, 8):
                if len({i, j, k}) != 3:
                    continue
                mask, sign = sorted_insertion((i, j, k))
                c = PHI.terms.get(mask, 0)
                if c:
                    table[i][j][k] = sign * int(c)
    return table


def _build_eps4():
    table = [
        [[[0] * (DIM + 1) for _ in range(DIM + 1)] for _ in range(DIM + 1)]
        for _ in range(DIM + 1)
    ]
    for i in range(1, 8):
        for j in range(1, 8):
            for k in range(1, 8):
                for l in range(1, 8):
                    if len({i, j, k, l}) != 4:
                        continue
                    mask, sign = sorted_insertion((i, j, k, l))
                    c = STAR_PHI.terms.get(mask, 0)
                    if c:
                        table[i][j][k][l] = sign * int(c)
    return table


EPS3 = _build_eps3()
EPS4 = _build_eps4()


def epsilon3(i: int, j: int, k: int) -> int:
    return EPS3[i][j][k]


def epsilon4(i: int, j: int, k: int, l: int) -> int:
    return EPS4[i][j][k][l]


def cross(u: Vector, v: Vector) -> Vector:
    """Two-fold vector cross product determined by phi."""
    out = [0] * DIM
    for i in range(1, 8):
        ui = u[i]
        if ui == 0:
            continue
        for j in range(1, 8):
            vj = v[j]
            if vj == 0:
                continue
            row = EPS3[i][j]
            for k in range(1, 8):
                e = row[k]
                if e:
                    out[k - 1] += e * ui * vj
    return Vector(out)


def vee_matrix(v: Vector):
    """Skew matrix [v] with [v]_ij = eps_ijk v_k; satisfies [v]w = v x w... no,
    rather w^T [v] pairing; the defining property tested is eps-contraction."""
    return [
        [sum(EPS3[i][j][k] * v[k] for k in range(1, 8)) for j in range(1, 8)]
        for i in range(1, 8)
    ]


def angle_map(a) -> Vector:
    """Contraction <a>_i = eps_ijk a_jk of a 7x7 matrix (0-based storage)."""
    out = []
    for i in range(1, 8):
        total = 0
        for j in range(1, 8):
            for k in range(1, 8):
                e = EPS3[i][j][k]
                if e:
                    total += e * a[j - 1][k - 1]
        out.append(total)
    return Vector(out)


def in_g2(a, tol=0) -> bool:
    """A skew matrix lies in the 14-dimensional stabilizer algebra iff its
    epsilon contraction vanishes."""
    v = angle_map(a)
    return all(abs(float(c)) <= tol for c in v.comps)


# ---------------------------------------------------------------------------
# type projections at the model point (identity metric star throughout)


def project2(beta: Form):
    """Split a 2-form into its 7- and 14-dimensional components."""
    if beta.degree != 2:
        raise ValueError("project2 expects a 2-form")
    s = hodge_star(beta.wedge(PHI))
    third = Fraction(1, 3)
    b7 = (beta + s).scale(third)
    b14 = (beta.scale(2) - s).scale(third)
    return b7, b14


def lambda3_7_potential(gamma: Form) -> Form:
    """For gamma = *(alpha ^ phi) recover alpha; linear in gamma and kills
    the 1- and 27-components, so it doubles as part of the projection."""
    return hodge_star(gamma.wedge(PHI)).scale(Fraction(-1, 4))


def project3(gamma: Form):
    """Split a 3-form into its 1-, 7- and 27-dimensional components."""
    if gamma.degree != 3:
        raise ValueError("project3 expects a 3-form")
    c1 = form_inner(gamma, PHI) * Fraction(1, 7)
    g1 = PHI.scale(c1)
    alpha = lambda3_7_potential(gamma)
    g7 = hodge_star(alpha.wedge(PHI))
    g27 = gamma - g1 - g7
    return g1, g7, g27


def project4(rho: Form):
    """Type components of a 4-form, via the star of project3."""
    p1, p7, p27 = project3(hodge_star(rho))
    return hodge_star(p1), hodge_star(p7), hodge_star(p27)


def project5(rho: Form):
    """Type components of a 5-form, via the star of project2."""
    p7, p14 = project2(hodge_star(rho))
    return hodge_star(p7), hodge_star(p14)


# ---------------------------------------------------------------------------
# i and j maps


def _build_ij_tables():
    """Constant coefficient tables behind i and j.

    ``itab[i][j]`` is the 3-form e^i ^ (e_j -| phi); ``jtab[a][b]`` maps each
    3-form basis mask to the top coefficient of
    (e_a -| phi) ^ (e_b -| phi) ^ e_mask.
    """
    contr = [PHI.contract(v) for v in BASIS_VECTORS]
    itab = [
        [Form.basis(i + 1).wedge(contr[j]) for j in range(DIM)] for i in range(DIM)
    ]
    top = (1 << DIM) - 1
    jtab = []
    for a in range(DIM):
        row = []
        for b in range(DIM):
            four = contr[a].wedge(contr[b])
            pairing = {}
            for mask, c in four.terms.items():
                comp = top ^ mask
                sign = _shuffle_sign(mask, comp)
                pairing[comp] = pairing.get(comp, 0) + sign * c
            row.append({m: c for m, c in pairing.items() if c})
        jtab.append(row)
    return itab, jtab


_ITAB = None
_JTAB = None


def _tables():
    global _ITAB, _JTAB
    if _ITAB is None:
        _ITAB, _JTAB = _build_ij_tables()
    return _ITAB, _JTAB


def i_map(h) -> Form:
    """Symmetric 7x7 matrix (0-based) to 3-form; i(identity) = 6 phi."""
    itab, _ = _tables()
    acc = {}
    for i in range(DIM):
        for j in range(DIM):
            hij = h[i][j]
            if hij == 0:
                continue
            for mask, c in itab[i][j].terms.items():
                acc[mask] = acc.get(mask, 0) + 2 * hij * c
    return Form(3, {m: c for m, c in acc.items() if c != 0})


def j_map(gamma: Form):
    """3-form to symmetric 7x7 matrix; j(phi) = 6 g."""
    if gamma.degree != 3:
        raise ValueError("j_map expects a 3-form")
    _, jtab = _tables()
    out = [[0] * DIM for _ in range(DIM)]
    for a in range(DIM):
        for b in range(a, DIM):
            pairing = jtab[a][b]
            val = 0
            for mask, c in gamma.terms.items():
                w = pairing.get(mask)
                if w:
                    val = val + w * c
            out[a][b] = val
            out[b][a] = val
    return out


def sym_trace(h):
    return sum(h[i][i] for i in range(DIM))


def sym_norm_sq(h):
    return sum(h[i][j] * h[i][j] for i in range(DIM) for j in range(DIM))


# ---------------------------------------------------------------------------
# invariants of the 14-dimensional representation


def two_form_rank(beta: Form) -> int:
    """Rank of a 2-form viewed as a skew matrix (0, 2, 4 or 6 here)."""
    if beta.degree != 2:
        raise ValueError("rank is defined for 2-forms")
    m = [[0] * DIM for _ in range(DIM)]
    for mask, c in beta.terms.items():
        i, j = indices_of(mask)
        m[i - 1][j - 1] = c
        m[j - 1][i - 1] = -c
    # row reduce, exact when rational
    rows = [list(r) for r in m]
    rank = 0
    col = 0
    while col < DIM and rank < DIM:
        piv = max(range(rank, DIM), key=lambda r: abs(float(rows[r][col])))
        if float(rows[piv][col]) == 0.0:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(DIM):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def lambda14_invariants(beta: Form) -> dict:
    """Conjugation invariants and the toral normal form of a 2-form of type 14.

    Returns the quadratic and sextic invariants plus the parameters
    0 <= lambda1 <= lambda2 of the normal form
    lambda1 e^23 + lambda2 e^45 - (lambda1+lambda2) e^67.
    """
    q2 = form_norm_sq(beta)
    cube = beta.wedge(beta).wedge(beta)
    q6 = form_norm_sq(cube)
    q2f, q6f = float(q2), float(q6)
    # roots of t^3 - (q2/2) t + sqrt(q6)/6, chosen so the product of the
    # roots is nonpositive; the two largest are the normal form parameters
    p = q2f / 2.0
    if p <= 0:
        roots = [0.0, 0.0, 0.0]
    else:
        r = math.sqrt(q6f) / 6.0
        # substituting t = 2 sqrt(p/3) cos(theta) into t^3 - p t + r = 0
        # gives cos(3 theta) = -r / (2 (p/3)^{3/2})
        amp = 2.0 * math.sqrt(p / 3.0)
        c3 = -r / (2.0 * (p / 3.0) ** 1.5)
        c3 = min(1.0, max(-1.0, c3))
        theta = math.acos(c3) / 3.0
        roots = sorted(
            amp * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)
        )
    lam1, lam2 = sorted((roots[1], roots[2]))
    return {
        "q2": q2,
        "q6": q6,
        "lambda1": max(lam1, 0.0),
        "lambda2": max(lam2, 0.0),
        "rank": two_form_rank(beta),
    }


# ---------------------------------------------------------------------------
# the quartic pairing Q on 3-forms


def _pair_contract(rho: Form, i: int, j: int) -> Form:
    """(e_i ^ e_j) -| rho."""
    return rho.contract(BASIS_VECTORS[i - 1]).contract(BASIS_VECTORS[j - 1])


def q_pairing(alpha: Form, beta: Form) -> Form:
    """Q(alpha, beta) at the model point: a symmetric quadratic 3-form pairing
    built from the epsilon four-index table."""
    if alpha.degree != 3 or beta.degree != 3:
        raise ValueError("q_pairing expects 3-forms")
    sa = hodge_star(alpha)
    sb = hodge_star(beta)
    ca = {}
    cb = {}
    for i in range(1, 8):
        for j in range(i + 1, 8):
            ca[(i, j)] = _pair_contract(sa, i, j)
            cb[(i, j)] = _pair_contract(sb, i, j)
    total = Form(4)
    for (i, j), left in ca.items():
        for (k, l), right in cb.items():
            e = EPS4[i][j][k][l]
            if e:
                # factor 4 for the two orderings of each index pair
                total = total + left.wedge(right).scale(4 * e)
    return hodge_star(total)


def epsilon_identity_residuals() -> dict:
    """Exact residuals of the structural epsilon contraction identities.

    All values are 0 when the tables are consistent.  Kept as a runtime
    verification suite because everything downstream leans on these.
    """
    res = {}
    r = 0
    for k in range(1, 8):
        for l in range(1, 8):
            s = sum(EPS3[i][j][k] * EPS3[i][j][l] for i in range(1, 8) for j in range(1, 8))
            r = max(r, abs(s - (6 if k == l else 0)))
    res["eps3_eps3_double"] = r

    r = 0
    for q in range(1, 8):
        for k in range(1, 8):
            for l in range(1, 8):
                s = sum(
                    EPS3[i][j][q] * EPS4[i][j][k][l]
                    for i in range(1, 8)
                    for j in range(1, 8)
                )
                r = max(r, abs(s - 4 * EPS3[q][k][l]))
    res["eps3_eps4_double"] = r

    r = 0
    for p in range(1, 8):
        for q in range(1, 8):
            for j in range(1, 8):
                for k in range(1, 8):
                    s = sum(EPS3[i][p][q] * EPS3[i][j][k] for i in range(1, 8))
                    expect = (
                        EPS4[p][q][j][k]
                        + (p == j) * (q == k)
                        - (p == k) * (q == j)
                    )
                    r = max(r, abs(s - expect))
    res["eps3_eps3_single"] = r

    r = 0
    for p in range(1, 8):
        for q in range(1, 8):
            for j in range(1, 8):
                for k in range(1, 8):
                    for l in range(1, 8):
                        s = sum(EPS3[i][p][q] * EPS4[i][j][k][l] for i in range(1, 8))
                        expect = (
                            (p == j) * EPS3[q][k][l]
                            - (j == q) * EPS3[p][k][l]
                            + (p == k) * EPS3[j][q][l]
                            - (k == q) * EPS3[j][p][l]
                            + (p == l) * EPS3[j][k][q]
                            - (l == q) * EPS3[j][k][p]
                        )
                        r = max(r, abs(s - expect))
    res["eps3_eps4_single"] = r
    return res
