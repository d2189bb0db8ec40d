"""Dense univariate polynomials over exact rationals and a reflection-closed
operator algebra on them.

Operators are linear combinations of chains of four primitives, each of which
maps polynomials to polynomials:

    MulPoly(p)   multiplication by a polynomial p(y)
    Diff         d/dy
    Reflect      p(y) -> p(-y)
    OddOverY     p(y) -> (p(y) - p(-y)) / y

OddOverY is the closure trick: the quotient is always polynomial because the
numerator is odd, so operators like (1/y)(1 - R) never leave the polynomial
ring. Chains are stored explicitly (not as closures) so operators can be
composed, printed, and converted to matrices on the monomial basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import rat

__all__ = [
    "Poly",
    "ReflOp",
    "MulPoly",
    "Diff",
    "Reflect",
    "OddOverY",
    "DegreeOverflowError",
    "dunkl",
    "matrix_on_basis",
    "mat_mul",
    "solve_monic_eigenvector",
    "DegenerateSpectrumError",
]


class DegreeOverflowError(ValueError):
    """Operator image exceeded the caller-supplied degree bound."""


class DegenerateSpectrumError(ValueError):
    """Requested eigenvalue collides with a lower one; construction refused."""


class Poly:
    """Dense polynomial in y with Fraction coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def monomial(n: int, c=1) -> "Poly":
        return Poly((0,)*n + (c,))

    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def scale(self, s) -> "Poly":
        s = rat(s)
        return Poly([s*c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly.zero()
        out = [Fraction(0)]*(len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i+j] += a*b
        return Poly(out)

    def deriv(self) -> "Poly":
        return Poly([k*c for k, c in enumerate(self.coeffs)][1:])

    def reflect(self) -> "Poly":
        """p(y) -> p(-y)."""
        return Poly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def odd_over_y(self) -> "Poly":
        """(p(y) - p(-y)) / y: twice the odd part, divided by y. Always exact."""
        out = [Fraction(0)]*max(len(self.coeffs) - 1, 0)
        for k in range(1, len(self.coeffs), 2):
            out[k-1] = 2*self.coeffs[k]
        return Poly(out)

    def __call__(self, t):
        """Evaluate at t (Fraction stays exact, float goes numeric)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc*t + (c if isinstance(t, Fraction) else float(c))
        return acc

    def as_float_coeffs(self):
        return [float(c) for c in self.coeffs]

    def __repr__(self):
        return f"Poly({self.pretty()})"

    def pretty(self, var: str = "y") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                yk = var if k == 1 else f"{var}^{k}"
                body = yk if mag == 1 else f"{mag}*{yk}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


# ---------------------------------------------------------------------------
# primitives and operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MulPoly:
    poly: Poly

    def apply(self, p: Poly) -> Poly:
        return self.poly * p

    def symbol(self) -> str:
        return f"({self.poly.pretty()})"


class _Diff:
    def apply(self, p: Poly) -> Poly:
        return p.deriv()

    def symbol(self) -> str:
        return "d/dy"

    def __repr__(self):
        return "Diff"


class _Reflect:
    def apply(self, p: Poly) -> Poly:
        return p.reflect()

    def symbol(self) -> str:
        return "R"

    def __repr__(self):
        return "Reflect"


class _OddOverY:
    def apply(self, p: Poly) -> Poly:
        return p.odd_over_y()

    def symbol(self) -> str:
        return "y^-1(1-R)"

    def __repr__(self):
        return "OddOverY"


Diff = _Diff()
Reflect = _Reflect()
OddOverY = _OddOverY()


class ReflOp:
    """Linear operator on Poly: a sum of scalar-weighted primitive chains.

    A chain (s, (P1, P2, ..., Pk)) acts as s * P1(P2(...Pk(p))): the rightmost
    primitive is applied first, matching operator-product notation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple((rat(s), tuple(chain)) for s, chain in terms)

    # -- constructors -------------------------------------------------------
    @staticmethod
    def identity(scale=1) -> "ReflOp":
        return ReflOp([(scale, ())])

    @staticmethod
    def from_primitive(prim, scale=1) -> "ReflOp":
        return ReflOp([(scale, (prim,))])

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "ReflOp") -> "ReflOp":
        return ReflOp(self.terms + other.terms)

    def __sub__(self, other: "ReflOp") -> "ReflOp":
        return self + other.scale(-1)

    def scale(self, s) -> "ReflOp":
        s = rat(s)
        return ReflOp([(s*c, chain) for c, chain in self.terms])

    def apply(self, p: Poly) -> Poly:
        out = Poly.zero()
        for s, chain in self.terms:
            q = p
            for prim in reversed(chain):
                q = prim.apply(q)
            out = out + q.scale(s)
        return out

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for s, chain in self.terms:
            body = "*".join(prim.symbol() for prim in chain) if chain else "I"
            if s == 1:
                parts.append(body)
            elif s == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{s}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ReflOp[{self.pretty()}]"


def compose(a: ReflOp, b: ReflOp) -> ReflOp:
    """Operator product a∘b (b applied first)."""
    terms = []
    for sa, ca in a.terms:
        for sb, cb in b.terms:
            terms.append((sa*sb, ca + cb))
    return ReflOp(terms)


def dunkl(mu) -> ReflOp:
    """Dunkl operator T_mu = d/dy + mu * y^-1 (1 - R)."""
    return ReflOp([(1, (Diff,)), (rat(mu), (OddOverY,))])


def matrix_on_basis(op: ReflOp, degree_bound: int):
    """(D+1)x(D+1) Fraction matrix of op on the monomial basis 1, y, ..., y^D.

    Column j holds the coefficients of op(y^j). Raises DegreeOverflowError if
    some image exceeds the bound.
    """
    size = degree_bound + 1
    mat = [[Fraction(0)]*size for _ in range(size)]
    for j in range(size):
        img = op.apply(Poly.monomial(j))
        if img.degree > degree_bound:
            raise DegreeOverflowError(
                f"op(y^{j}) has degree {img.degree} > bound {degree_bound}")
        for i, c in enumerate(img.coeffs):
            mat[i][j] = c
    return mat


def mat_mul(a, b):
    """Exact product of two square Fraction matrices (lists of rows)."""
    n = len(a)
    return [[sum(a[i][k]*b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def solve_monic_eigenvector(mat, lam, n: int) -> Poly:
    """Monic degree-n polynomial P with (M - lam) P = 0, solved exactly.

    ``mat`` is the operator matrix on the basis 1..y^n (so (n+1)x(n+1)).
    Gaussian elimination over Fractions; raises DegenerateSpectrumError when
    the shifted system is singular (eigenvalue collision) or inconsistent.
    """
    lam = rat(lam)
    size = n + 1
    # unknowns c_0..c_{n-1}; c_n = 1 moves the last column to the rhs
    rows = [[mat[i][j] - (lam if i == j else 0) for j in range(n)]
            for i in range(size)]
    rhs = [-(mat[i][n] - (lam if i == n else 0)) for i in range(size)]
    # eliminate (size equations, n unknowns; overdetermined by one)
    aug = [rows[i] + [rhs[i]] for i in range(size)]
    piv_rows = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, size) if aug[i][col] != 0), None)
        if piv is None:
            raise DegenerateSpectrumError(
                f"eigenvalue {lam} is degenerate below degree {n}")
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        for i in range(size):
            if i != r and aug[i][col] != 0:
                f = aug[i][col] / pv
                aug[i] = [x - f*y for x, y in zip(aug[i], aug[r])]
        piv_rows.append((r, col))
        r += 1
    # consistency of the remaining equations
    for i in range(r, size):
        if aug[i][n] != 0:
            raise DegenerateSpectrumError(
                f"no monic eigenvector at eigenvalue {lam} (inconsistent system)")
    coeffs = [Fraction(0)]*size
    coeffs[n] = Fraction(1)
    for row, col in piv_rows:
        coeffs[col] = aug[row][n] / aug[row][col]
    return Poly(coeffs)
