"""Sparse exterior calculus on a seven dimensional vector space.

A form of degree p is stored as a map from 7-bit masks to coefficients:
bit i-1 of the mask set means the basis covector e^i occurs in the sorted
wedge monomial.  All sign bookkeeping reduces to popcount parities on
masks.  Coefficients are generic: exact rationals, floats, and the
polynomial coefficients used by the coordinate calculus all go through
the same code.

Vectors and 1-forms are kept as distinct types; the metric converts
between them via ``flat`` and ``sharp``.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import is_exact, parse_scalar, scalar_sqrt, scalar_to_json

DIM = 7
FULL_MASK = (1 << DIM) - 1

# ---------------------------------------------------------------------------
# mask utilities


def mask_of(indices) -> int:
    """Mask of a strictly increasing 1-based index tuple."""
    m = 0
    last = 0
    for i in indices:
        if not 1 <= i <= DIM:
            raise ValueError(f"index {i} out of range 1..7")
        if i <= last:
            raise ValueError(f"indices {tuple(indices)} not strictly increasing")
        last = i
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int):
    return tuple(i + 1 for i in range(DIM) if mask >> i & 1)


def sorted_insertion(indices):
    """Sort an arbitrary distinct index tuple; return (mask, sign)."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, 0
    return mask_of(idx), sign


def _shuffle_sign(m1: int, m2: int) -> int:
    """Sign of sorting the concatenation (indices of m1, indices of m2)."""
    inversions = 0
    for b in range(DIM):
        if m2 >> b & 1:
            inversions += (m1 >> (b + 1)).bit_count()
    return -1 if inversions & 1 else 1


def _removal_sign(mask: int, bit: int) -> int:
    """Sign of moving index `bit` (0-based) to the front of the monomial."""
    below = (mask & ((1 << bit) - 1)).bit_count()
    return -1 if below & 1 else 1


# ---------------------------------------------------------------------------
# vectors


class Vector:
    """Tangent vector with components in the fixed frame e_1..e_7."""

    __slots__ = ("comps",)

    def __init__(self, comps):
        comps = tuple(comps)
        if len(comps) != DIM:
            raise ValueError("a vector has seven components")
        self.comps = comps

    @classmethod
    def basis(cls, i: int) -> "Vector":
        return cls(tuple(1 if j == i - 1 else 0 for j in range(DIM)))

    def __getitem__(self, i: int):
        """Component along e_i, 1-based."""
        return self.comps[i - 1]

    def __add__(self, other):
        return Vector(a + b for a, b in zip(self.comps, other.comps))

    def __sub__(self, other):
        return Vector(a - b for a, b in zip(self.comps, other.comps))

    def __neg__(self):
        return Vector(-a for a in self.comps)

    def scale(self, c):
        return Vector(c * a for a in self.comps)

    def __repr__(self):
        return f"Vector{self.comps}"


BASIS_VECTORS = tuple(Vector.basis(i) for i in range(1, 8))


# ---------------------------------------------------------------------------
# forms


class Form:
    """Alternating form of fixed degree with sparse monomial storage."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        if not 0 <= degree <= DIM:
            raise ValueError("degree must be between 0 and 7")
        self.degree = degree
        clean = {}
        if terms:
            for mask, coeff in terms.items():
                if mask.bit_count() != degree:
                    raise ValueError("monomial degree mismatch")
                if coeff == 0:
                    continue
                clean[mask] = coeff
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, degree: int) -> "Form":
        return cls(degree)

    @classmethod
    def basis(cls, *indices) -> "Form":
        """The monomial e^{i1} ^ ... ^ e^{ip} for increasing indices."""
        m = mask_of(indices)
        return cls(len(indices), {m: Fraction(1)})

    @classmethod
    def from_terms(cls, degree: int, pairs) -> "Form":
        """Build from (indices, coeff) pairs; indices need not be sorted."""
        acc = {}
        for indices, coeff in pairs:
            if len(indices) != degree:
                raise ValueError("term degree mismatch")
            mask, sign = sorted_insertion(indices)
            if sign == 0:
                continue
            acc[mask] = acc.get(mask, 0) + sign * coeff
        return cls(degree, acc)

    @classmethod
    def constant(cls, value) -> "Form":
        return cls(0, {0: value})

    # -- ring structure

    def __add__(self, other: "Form") -> "Form":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return Form(self.degree, acc)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.degree, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "Form":
        if c == 0:
            return Form(self.degree)
        return Form(self.degree, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, c) -> "Form":
        return self.scale(c)

    def __truediv__(self, c) -> "Form":
        if isinstance(c, int):
            c = Fraction(c)
        return self.scale(1 / c)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, *indices):
        """Coefficient of the sorted monomial; 0 when absent."""
        return self.terms.get(mask_of(indices), 0)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.degree == other.degree and (self - other).is_zero()

    def __hash__(self):
        raise TypeError("forms are mutable value objects; not hashable")

    def max_abs(self) -> float:
        """Largest absolute coefficient, as a float (0.0 for the zero form)."""
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def map_coeffs(self, fn) -> "Form":
        return Form(self.degree, {m: fn(c) for m, c in self.terms.items()})

    def to_float(self) -> "Form":
        return self.map_coeffs(float)

    # -- exterior operations

    def wedge(self, other: "Form") -> "Form":
        p = self.degree + other.degree
        if p > DIM:
            # identically zero in dimension seven
            return Form(DIM)
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    continue
                s = _shuffle_sign(m1, m2)
                m = m1 | m2
                acc[m] = acc.get(m, 0) + (c1 * c2 if s > 0 else -(c1 * c2))
        return Form(p, acc)

    def __xor__(self, other):
        return self.wedge(other)

    def contract(self, v: Vector) -> "Form":
        """Interior product v -| a (v in the first slot)."""
        if self.degree == 0:
            raise ValueError("cannot contract a 0-form")
        acc = {}
        for mask, c in self.terms.items():
            rem = mask
            while rem:
                bit = (rem & -rem).bit_length() - 1
                rem &= rem - 1
                vi = v.comps[bit]
                if vi == 0:
                    continue
                s = _removal_sign(mask, bit)
                m = mask & ~(1 << bit)
                term = vi * c
                acc[m] = acc.get(m, 0) + (term if s > 0 else -term)
        return Form(self.degree - 1, acc)

    def evaluate(self, *vectors):
        """Evaluate on p vectors."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of arguments")
        out = self
        for v in vectors:
            out = out.contract(v)
        return out.terms.get(0, 0)

    # -- serialization

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda kv: indices_of(kv[0]))
        return {
            "degree": self.degree,
            "terms": [
                {"indices": list(indices_of(m)), "coeff": scalar_to_json(c)}
                for m, c in items
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Form":
        degree = int(data["degree"])
        pairs = [
            (tuple(t["indices"]), parse_scalar(t["coeff"]))
            for t in data.get("terms", [])
        ]
        return cls.from_terms(degree, pairs)

    def __repr__(self):
        if not self.terms:
            return f"Form(deg={self.degree}, 0)"
        bits = []
        for m in sorted(self.terms, key=indices_of):
            label = "".join(str(i) for i in indices_of(m)) or "1"
            bits.append(f"{self.terms[m]}*e{label}")
        return f"Form(deg={self.degree}, " + " + ".join(bits) + ")"


# ---------------------------------------------------------------------------
# dense linear algebra on small matrices (exact or float entries)


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [
        [sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)
    ]


def mat_vec(A, x):
    return [sum(A[i][j] * x[j] for j in range(len(x))) for i in range(len(A))]


def mat_transpose(A):
    return [list(row) for row in zip(*A)]


def _pivot_row(col, start, exact):
    best, best_val = -1, 0.0
    for r in range(start, len(col)):
        v = col[r]
        if exact:
            if v != 0:
                return r
        else:
            if abs(v) > best_val:
                best, best_val = r, abs(v)
    return best if not exact else -1


def mat_det(M):
    """Determinant by Gaussian elimination; exact for rational entries."""
    n = len(M)
    A = [list(row) for row in M]
    exact = all(is_exact(x) for row in A for x in row)
    if exact:
        A = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1) if exact else 1.0
    for c in range(n):
        col = [A[r][c] for r in range(n)]
        p = _pivot_row(col, c, exact)
        if p == -1 or A[p][c] == 0:
            return Fraction(0) if exact else 0.0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c] if exact else 1.0 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f == 0:
                continue
            for k in range(c, n):
                A[r][k] -= f * A[c][k]
    return det


def mat_inv(M):
    """Inverse by Gauss-Jordan elimination; exact for rational entries."""
    n = len(M)
    exact = all(is_exact(x) for row in M for x in row)
    if exact:
        A = [[Fraction(x) for x in row] for row in M]
        aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    else:
        aug = [
            [float(x) for x in row] + [float(i == j) for j in range(n)]
            for i, row in enumerate(M)
        ]
    for c in range(n):
        col = [aug[r][c] for r in range(n)]
        p = _pivot_row(col, c, exact)
        if p == -1:
            p = next((r for r in range(c, n) if aug[r][c] != 0), -1)
        if p == -1 or aug[p][c] == 0:
            raise ValueError("singular matrix")
        if p != c:
            aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r == c or aug[r][c] == 0:
                continue
            f = aug[r][c]
            aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def minor_det(M, rows, cols):
    """Determinant of the submatrix M[rows][cols] (small, expansion based)."""
    k = len(rows)
    if k == 0:
        return 1
    if k == 1:
        return M[rows[0]][cols[0]]
    if k == 2:
        a, b = rows
        c, d = cols
        return M[a][c] * M[b][d] - M[a][d] * M[b][c]
    total = 0
    sign = 1
    sub_rows = rows[1:]
    for j in range(k):
        x = M[rows[0]][cols[j]]
        if x != 0:
            sub_cols = cols[:j] + cols[j + 1 :]
            term = x * minor_det(M, sub_rows, sub_cols)
            total = total + (term if sign > 0 else -term)
        sign = -sign
    return total


# ---------------------------------------------------------------------------
# metrics


class Metric:
    """Symmetric positive bilinear form on the frame, with inverse cache."""

    __slots__ = ("matrix", "_inv", "_det", "_is_id", "_minors")

    def __init__(self, matrix):
        rows = [list(r) for r in matrix]
        if len(rows) != DIM or any(len(r) != DIM for r in rows):
            raise ValueError("a metric is a 7x7 matrix")
        self.matrix = rows
        self._inv = None
        self._det = None
        self._minors = {}
        self._is_id = all(
            rows[i][j] == (1 if i == j else 0) for i in range(DIM) for j in range(DIM)
        )

    @classmethod
    def identity(cls) -> "Metric":
        return cls([[Fraction(int(i == j)) for j in range(DIM)] for i in range(DIM)])

    @property
    def is_identity(self) -> bool:
        return self._is_id

    def det(self):
        if self._det is None:
            self._det = mat_det(self.matrix)
        return self._det

    def inv(self):
        if self._inv is None:
            self._inv = mat_inv(self.matrix)
        return self._inv

    def sqrt_det(self):
        return scalar_sqrt(self.det())

    def inv_minor(self, rows, cols):
        """Cached determinant of the submatrix of g^{-1} (symmetric in the
        two index sets), the raising factor for p-form components."""
        key = (rows, cols) if rows <= cols else (cols, rows)
        val = self._minors.get(key)
        if val is None:
            val = minor_det(self.inv(), list(key[0]), list(key[1]))
            self._minors[key] = val
        return val

    def inner_vectors(self, v: Vector, w: Vector):
        return sum(
            self.matrix[i][j] * v.comps[i] * w.comps[j]
            for i in range(DIM)
            for j in range(DIM)
            if self.matrix[i][j] != 0
        )

    def __repr__(self):
        return f"Metric({self.matrix!r})"


def flat(v: Vector, metric: Metric | None = None) -> Form:
    """Lower the index of a vector."""
    if metric is None or metric.is_identity:
        comps = v.comps
    else:
        comps = mat_vec(metric.matrix, list(v.comps))
    return Form(1, {1 << i: c for i, c in enumerate(comps) if c != 0})


def sharp(alpha: Form, metric: Metric | None = None) -> Vector:
    """Raise the index of a 1-form."""
    if alpha.degree != 1:
        raise ValueError("sharp expects a 1-form")
    comps = [alpha.terms.get(1 << i, 0) for i in range(DIM)]
    if metric is None or metric.is_identity:
        return Vector(comps)
    return Vector(mat_vec(metric.inv(), comps))


# ---------------------------------------------------------------------------
# Hodge star and inner products


def hodge_star(
    a: Form, metric: Metric | None = None, orientation: int = 1, scale=None
) -> Form:
    """Hodge star on forms of any degree.

    ``scale`` overrides sqrt(det g) when the caller knows it exactly (the
    definite form machinery does).  With the identity metric everything is
    pure sign bookkeeping and works over any coefficient ring.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    p = a.degree
    if metric is None or metric.is_identity:
        acc = {}
        for m, c in a.terms.items():
            comp = FULL_MASK & ~m
            s = _shuffle_sign(m, comp) * orientation
            acc[comp] = c if s > 0 else -c
        return Form(DIM - p, acc)

    if scale is None:
        scale = metric.sqrt_det()
    src = [(tuple(i for i in range(DIM) if mi >> i & 1), c) for mi, c in a.terms.items()]
    acc = {}
    for comp_mask in _masks_of_degree(DIM - p):
        m = FULL_MASK & ~comp_mask
        rows = tuple(i for i in range(DIM) if m >> i & 1)
        total = 0
        for cols, c in src:
            d = metric.inv_minor(rows, cols)
            if d != 0:
                total = total + d * c
        if total != 0:
            s = _shuffle_sign(m, comp_mask) * orientation
            val = scale * total
            acc[comp_mask] = val if s > 0 else -val
    return Form(DIM - p, acc)


def _masks_of_degree(p: int):
    key = p
    cached = _MASK_CACHE.get(key)
    if cached is None:
        cached = [m for m in range(1 << DIM) if m.bit_count() == p]
        _MASK_CACHE[key] = cached
    return cached


_MASK_CACHE: dict = {}


def form_inner(a: Form, b: Form, metric: Metric | None = None):
    """Pointwise inner product of two forms of equal degree.

    Normalized so the basis monomials e^I are orthonormal for the identity
    metric.
    """
    if a.degree != b.degree:
        raise ValueError("inner product needs equal degrees")
    if metric is None or metric.is_identity:
        total = 0
        for m, c in a.terms.items():
            d = b.terms.get(m)
            if d is not None:
                total = total + c * d
        return total
    total = 0
    for mi, c in a.terms.items():
        rows = tuple(i for i in range(DIM) if mi >> i & 1)
        for mj, d in b.terms.items():
            cols = tuple(i for i in range(DIM) if mj >> i & 1)
            det = metric.inv_minor(rows, cols)
            if det != 0:
                total = total + det * c * d
    return total


def form_norm_sq(a: Form, metric: Metric | None = None):
    return form_inner(a, a, metric)


def pullback(A, a: Form) -> Form:
    """Pullback of a form under the linear map with matrix A.

    Convention: the map sends v to A v, so e^i pulls back to sum_j A[i][j] e^j
    and metric_from(pullback(A, phi)) recovers A^T A.
    """
    if a.degree == 0:
        return a
    images = [
        Form(1, {1 << j: A[i][j] for j in range(DIM) if A[i][j] != 0})
        for i in range(DIM)
    ]
    total = Form(a.degree)
    for mask, c in a.terms.items():
        prod = None
        for i in range(DIM):
            if mask >> i & 1:
                prod = images[i] if prod is None else prod.wedge(images[i])
        total = total + prod.scale(c)
    return total


VOLUME_MASK = FULL_MASK


def volume_form(scale=1) -> Form:
    return Form(DIM, {FULL_MASK: scale if scale != 0 else 0})
