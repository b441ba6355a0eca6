"""Exact sparse polynomials in seven variables over the rationals.

Used as the coefficient ring of forms on flat seven-space, so that the
first and second order operator identities of the torsion-free calculus
can be verified exactly.  A :class:`Poly` supports the ring operations,
scalar multiplication by rationals, partial derivatives, and exact
integration over the symmetric box [-1, 1]^7; it compares equal to the
integer 0 when it has no terms, which lets it serve as a drop-in
coefficient for :class:`~g2kit.forms.Form`.
"""

from __future__ import annotations

from fractions import Fraction

NVARS = 7

_ZERO_EXP = (0,) * NVARS


class Poly:
    """Sparse polynomial: map from exponent 7-tuples to rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    self.terms[tuple(exp)] = (
                        c if isinstance(c, Fraction) else Fraction(c)
                    )

    # -- constructors -----------------------------------------------------
    @staticmethod
    def constant(c) -> "Poly":
        return Poly({_ZERO_EXP: Fraction(c)})

    @staticmethod
    def variable(i: int) -> "Poly":
        """The coordinate x_i, 1-based."""
        if not 1 <= i <= NVARS:
            raise ValueError("variable index must be in 1..7")
        exp = [0] * NVARS
        exp[i - 1] = 1
        return Poly({tuple(exp): Fraction(1)})

    @staticmethod
    def monomial(exps, c=1) -> "Poly":
        return Poly({tuple(exps): Fraction(c)})

    # -- ring structure ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        res = Poly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = Poly()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = Poly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {_ZERO_EXP: Fraction(other)}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __abs__(self):
        """Magnitude surrogate: largest absolute coefficient (for residual
        reporting through code paths that size generic coefficients)."""
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    # -- calculus ---------------------------------------------------------
    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to x_i, 1-based."""
        k = i - 1
        out = {}
        for exp, c in self.terms.items():
            if exp[k]:
                e = list(exp)
                e[k] -= 1
                out[tuple(e)] = c * exp[k]
        res = Poly()
        res.terms = out
        return res

    def integral_box(self) -> Fraction:
        """Exact integral over the symmetric box [-1, 1]^7."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            if any(k % 2 for k in exp):
                continue
            factor = Fraction(1)
            for k in exp:
                factor *= Fraction(2, k + 1)
            total += c * factor
        return total

    def evaluate(self, point) -> Fraction:
        """Evaluate at a point given as a length-7 sequence."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for x, k in zip(point, exp):
                for _ in range(k):
                    v *= x
            total += v
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for exp, c in sorted(self.terms.items()):
            mono = "".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(exp)
                if k
            )
            bits.append(f"{c}{'*' + mono if mono else ''}")
        return "Poly(" + " + ".join(bits) + ")"


def _coerce(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly.constant(v)
    return NotImplemented
