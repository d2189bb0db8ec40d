"""Little -1 Jacobi polynomials: defining eigenvalue equation, moment
functional, explicit hypergeometric forms, orthogonality and norms.

The ground truth here is deliberately redundant. Two independent oracles
construct the monic family:

* the first-order Dunkl-type eigenvalue equation
      [2(1-y) d/dy R + (a+b+1 - a/y)(1-R)] P_n = lambda_n P_n,
  solved degree by degree in exact arithmetic, and
* Gram elimination against the moment functional with
      c_0 = 1,  c_{2n} = c_{2n-1} = (a/2+1/2)_n / (a/2+b/2+1)_n.

The explicit closed forms that are commonly printed for this family are
treated as claims and compared against the oracles; the odd-degree printed
variant is known to disagree (wrong second-block prefactor and kappa base),
so both a ``printed`` and a ``corrected`` assembly are provided and the
difference is reported, never silently patched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import pochhammer, rat
from .opalg import (
    DegenerateSpectrumError,
    Diff,
    MulPoly,
    OddOverY,
    Poly,
    Reflect,
    ReflOp,
    matrix_on_basis,
    solve_monic_eigenvector,
)

__all__ = [
    "Jacobi1Params",
    "MomentFunctional",
    "FamilyReport",
    "lop",
    "eigenvalue",
    "construct_oracle",
    "construct_eigen_raw",
    "construct_gram",
    "construct_explicit",
    "inner",
    "norm_sq_closed",
    "norm_sq_from_normalization",
    "verify_family",
    "FUZZ_PARAMS",
]

# parameter pairs used by the randomized "for all alpha, beta" suites
FUZZ_PARAMS = (
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(1)),
    (Fraction(1, 2), Fraction(3, 2)),
    (Fraction(1, 3), Fraction(2)),
    (Fraction(2), Fraction(1, 5)),
)


@dataclass(frozen=True)
class Jacobi1Params:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", rat(self.alpha))
        object.__setattr__(self, "beta", rat(self.beta))
        if self.alpha <= -1 or self.beta <= -1:
            raise ValueError("little -1 Jacobi parameters require alpha, beta > -1")

    def shifted(self, dbeta: int) -> "Jacobi1Params":
        return Jacobi1Params(self.alpha, self.beta + dbeta)

    def label(self) -> str:
        return f"alpha={self.alpha}, beta={self.beta}"


class MomentFunctional:
    """Normalized moments of the orthogonality functional, c_0 = 1."""

    def __init__(self, params: Jacobi1Params):
        self.params = params
        self._cache = [Fraction(1)]

    def moment(self, n: int) -> Fraction:
        while len(self._cache) <= n:
            k = len(self._cache)
            m = (k + 1) // 2
            a, b = self.params.alpha, self.params.beta
            self._cache.append(
                pochhammer(a/2 + Fraction(1, 2), m) / pochhammer(a/2 + b/2 + 1, m))
        return self._cache[n]

    def extend(self, n: int) -> None:
        """Precompute moments up to index n (for sharing across threads)."""
        self.moment(n)


def inner(p: Poly, q: Poly, m: MomentFunctional) -> Fraction:
    """Exact bilinear form sum_ij p_i q_j c_{i+j}."""
    total = Fraction(0)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            if b == 0:
                continue
            total += a*b*m.moment(i + j)
    return total


def lop(params: Jacobi1Params) -> ReflOp:
    """The defining first-order Dunkl-type operator.

    2(1-y) d/dy R + (a+b+1)(1-R) - a y^-1 (1-R), with the singular part
    realized through the polynomial-closed OddOverY primitive.
    """
    a, b = params.alpha, params.beta
    s = a + b + 1
    return ReflOp([
        (1, (MulPoly(Poly((2, -2))), Diff, Reflect)),
        (s, ()),
        (-s, (Reflect,)),
        (-a, (OddOverY,)),
    ])


def eigenvalue(n: int, params: Jacobi1Params) -> Fraction:
    """-2n for even degree, 2(n+a+b+1) for odd degree."""
    if n % 2 == 0:
        return Fraction(-2*n)
    return 2*(n + params.alpha + params.beta + 1)


def _lop_raw(alpha: Fraction, beta: Fraction) -> ReflOp:
    a, b = rat(alpha), rat(beta)
    s = a + b + 1
    return ReflOp([
        (1, (MulPoly(Poly((2, -2))), Diff, Reflect)),
        (s, ()),
        (-s, (Reflect,)),
        (-a, (OddOverY,)),
    ])


def _eigenvalue_raw(n: int, alpha: Fraction, beta: Fraction) -> Fraction:
    if n % 2 == 0:
        return Fraction(-2*n)
    return 2*(n + rat(alpha) + rat(beta) + 1)


def construct_eigen_raw(n: int, alpha, beta) -> Poly:
    """Monic degree-n eigenvector of the defining operator at raw parameters.

    Analytic continuation of the family in (alpha, beta): weight positivity
    is not required, only a nondegenerate spectrum below degree n. Used for
    the beta -> beta-2 shifted targets of the lowering/raising maps.
    """
    alpha, beta = rat(alpha), rat(beta)
    lam = _eigenvalue_raw(n, alpha, beta)
    for m in range(n):
        if _eigenvalue_raw(m, alpha, beta) == lam:
            raise DegenerateSpectrumError(
                f"lambda_{n} = lambda_{m} = {lam} at alpha={alpha}, beta={beta}")
    mat = matrix_on_basis(_lop_raw(alpha, beta), n)
    return solve_monic_eigenvector(mat, lam, n)


def construct_oracle(n: int, params: Jacobi1Params) -> Poly:
    """Monic degree-n eigenvector of lop, found by exact linear algebra.

    Refuses degenerate spectra: if lambda_n collides with a lower eigenvalue
    the family member is not uniquely defined and we report rather than pick.
    """
    return construct_eigen_raw(n, params.alpha, params.beta)


def construct_gram(n: int, params: Jacobi1Params,
                   moments: MomentFunctional | None = None) -> Poly:
    """Monic degree-n polynomial from Gram elimination over the moments.

    Independent of the eigenvalue equation; the two constructions agreeing is
    itself one of the module's checks.
    """
    m = moments if moments is not None else MomentFunctional(params)
    prev: list[tuple[Poly, Fraction]] = []
    p = Poly.one()
    for k in range(n + 1):
        p = Poly.monomial(k)
        for q, qq in prev:
            r = inner(p, q, m) / qq
            p = p - q.scale(r)
        if k < n:
            prev.append((p, inner(p, p, m)))
    return p


def _kappa(n: int, params: Jacobi1Params, variant: str) -> Fraction:
    a, b = params.alpha, params.beta
    if n % 2 == 0:
        k = n // 2
        return (Fraction(-1)**k * pochhammer((a + 1)/2, k)
                / pochhammer(Fraction(n, 2) + a/2 + b/2 + 1, k))
    k = (n + 1) // 2
    if variant == "printed":
        base = Fraction(n + 1, 2) + a/2 + b/2 + 1
    else:
        base = Fraction(n - 1, 2) + a/2 + b/2 + 1
    return Fraction(-1)**k * pochhammer((a + 1)/2, k) / pochhammer(base, k)


def _hyp_poly_in_ysq(num, den, terms: int) -> Poly:
    """Terminating 2F1(num; den; y^2) expanded as an exact Poly in y."""
    coeffs = [Fraction(0)]*(2*terms - 1) if terms > 0 else [Fraction(1)]
    term = Fraction(1)
    for k in range(terms):
        if 2*k >= len(coeffs):
            coeffs.extend([Fraction(0)]*(2*k + 1 - len(coeffs)))
        coeffs[2*k] = term
        num_f = (num[0] + k)*(num[1] + k)
        den_f = (den[0] + k)*(k + 1)
        if den_f == 0:
            raise ValueError("denominator parameter collision in explicit form")
        term = term * num_f / den_f
    return Poly(coeffs)


def construct_explicit(n: int, params: Jacobi1Params,
                       variant: str = "corrected") -> Poly:
    """Assemble the explicit two-block hypergeometric closed form.

    ``printed`` uses the commonly typeset odd-degree coefficients
    ((a+b+1)/(a+1) second-block prefactor, kappa base (n+1)/2+a/2+b/2+1);
    ``corrected`` uses the variants forced by the oracles
    ((n+a+b+1)/(a+1) and base (n-1)/2+a/2+b/2+1). Even degrees agree.
    """
    if variant not in ("printed", "corrected"):
        raise ValueError(f"unknown variant {variant!r}")
    a, b = params.alpha, params.beta
    if ((a + 1)/2).denominator == 1 and (a + 1)/2 <= 0:
        raise ValueError("denominator parameter (a+1)/2 is a nonpositive integer")
    kap = _kappa(n, params, variant)
    if n % 2 == 0:
        k = n // 2
        blk1 = _hyp_poly_in_ysq((Fraction(-k), (n + a + b + 2)/Fraction(2)),
                                ((a + 1)/2,), k + 1)
        blk2 = _hyp_poly_in_ysq((Fraction(1 - k), (n + a + b + 2)/Fraction(2)),
                                ((a + 3)/2,), max(k, 1))
        bracket = blk1 + (Poly.monomial(1) * blk2).scale(Fraction(n, 1)/(a + 1))
    else:
        k = (n - 1) // 2
        blk1 = _hyp_poly_in_ysq(((1 - n)/Fraction(2), (n + a + b + 1)/Fraction(2)),
                                ((a + 1)/2,), k + 1)
        blk2 = _hyp_poly_in_ysq(((1 - n)/Fraction(2), (n + a + b + 3)/Fraction(2)),
                                ((a + 3)/2,), k + 1)
        pref = (a + b + 1) if variant == "printed" else (n + a + b + 1)
        bracket = blk1 - (Poly.monomial(1) * blk2).scale(pref/(a + 1))
    return bracket.scale(kap)


def norm_sq_closed(n: int, params: Jacobi1Params) -> Fraction:
    """Closed form for inner(P_n, P_n) (the squared-norm ratio N_0^2/N_n^2)."""
    a, b = params.alpha, params.beta
    if n == 0:
        return Fraction(1)
    if n % 2 == 0:
        k = n // 2
        num = (pochhammer(1, k) * pochhammer(a/2 + Fraction(1, 2), k)
               * pochhammer(b/2 + Fraction(1, 2), k) * pochhammer(a/2 + b/2 + 1, k))
        return num / pochhammer(a/2 + b/2 + 1, 2*k)**2
    k = (n + 1) // 2
    num = (pochhammer(1, k - 1) * pochhammer(a/2 + Fraction(1, 2), k)
           * pochhammer(b/2 + Fraction(1, 2), k) * pochhammer(a/2 + b/2 + 1, k - 1))
    return num / pochhammer(a/2 + b/2 + 1, 2*k - 1)**2


def norm_sq_from_normalization(n: int, params: Jacobi1Params) -> Fraction:
    """N_0^2/N_n^2 read off the displayed normalization-constant formula.

    Algebraic rearrangement of the same content as norm_sq_closed; the two
    agreeing exactly is one of the consistency checks.
    """
    a, b = params.alpha, params.beta
    if n % 2 == 0:
        k = n // 2
        den = (pochhammer(1, k) * pochhammer(a/2 + b/2 + 1, k)
               * pochhammer(a/2 + Fraction(1, 2), k)
               * pochhammer(b/2 + Fraction(1, 2), k))
    else:
        k = (n - 1) // 2
        den = (pochhammer(1, k) * pochhammer(a/2 + b/2 + 1, k)
               * pochhammer(a/2 + Fraction(1, 2), k + 1)
               * pochhammer(b/2 + Fraction(1, 2), k + 1))
    return den / pochhammer(a/2 + b/2 + 1, n)**2


@dataclass
class FamilyRecord:
    n: int
    eigenvalue: Fraction
    eigen_residual_zero: bool
    gram_matches_eigen: bool
    orthogonal: bool
    norm_matches_closed: bool
    explicit_matches: dict
    discrepancies: list = field(default_factory=list)

    def as_json_dict(self) -> dict:
        return {
            "n": self.n,
            "eigenvalue": str(self.eigenvalue),
            "eigen_residual_zero": self.eigen_residual_zero,
            "gram_matches_eigen": self.gram_matches_eigen,
            "orthogonal": self.orthogonal,
            "norm_matches_closed": self.norm_matches_closed,
            "explicit_matches": dict(self.explicit_matches),
            "discrepancies": list(self.discrepancies),
        }


@dataclass
class FamilyReport:
    family: str
    params: dict
    max_degree: int
    records: list
    all_oracle_checks_passed: bool
    skipped_degenerate: list = field(default_factory=list)

    def as_json_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "max_degree": self.max_degree,
            "all_oracle_checks_passed": self.all_oracle_checks_passed,
            "skipped_degenerate": list(self.skipped_degenerate),
            "records": [r.as_json_dict() for r in self.records],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.as_json_dict(), indent=indent)

    def discrepancy_count(self) -> int:
        return sum(len(r.discrepancies) for r in self.records)


def verify_family(params: Jacobi1Params, max_degree: int) -> FamilyReport:
    """Run the full exact verification battery up to the given degree.

    Per degree: zero residual in the eigenvalue equation, agreement of the
    two oracles, orthogonality against all lower members, closed-form norm,
    and the printed/corrected explicit assemblies compared to the oracle.
    Closed-form mismatches are recorded as findings, not failures; only
    internal oracle inconsistencies mark the report failed.
    """
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    moments = MomentFunctional(params)
    moments.extend(2*max_degree)
    operator = lop(params)
    records: list[FamilyRecord] = []
    skipped: list[int] = []
    oracle_ok = True
    constructed: list[Poly] = []
    for n in range(max_degree + 1):
        lam = eigenvalue(n, params)
        try:
            pn = construct_oracle(n, params)
        except DegenerateSpectrumError:
            skipped.append(n)
            continue
        residual = operator.apply(pn) - pn.scale(lam)
        res_zero = residual == Poly.zero()
        gram = construct_gram(n, params, moments)
        gram_ok = gram == pn
        orth_ok = all(inner(pn, q, moments) == 0 for q in constructed)
        norm_ok = inner(pn, pn, moments) == norm_sq_closed(n, params)
        explicit_matches = {}
        discrepancies = []
        for variant in ("printed", "corrected"):
            try:
                ex = construct_explicit(n, params, variant)
                match = ex == pn
            except ValueError as exc:
                ex, match = None, False
                discrepancies.append(f"explicit[{variant}] not assemblable: {exc}")
            explicit_matches[variant] = match
            if ex is not None and not match:
                discrepancies.append(
                    f"explicit[{variant}] = {ex.pretty()} differs from oracle "
                    f"{pn.pretty()}")
        if norm_sq_from_normalization(n, params) != norm_sq_closed(n, params):
            oracle_ok = False
            discrepancies.append("normalization-constant rearrangement mismatch")
        rec = FamilyRecord(n, lam, res_zero, gram_ok, orth_ok, norm_ok,
                           explicit_matches, discrepancies)
        records.append(rec)
        if not (res_zero and gram_ok and orth_ok and norm_ok):
            oracle_ok = False
        constructed.append(pn)
    return FamilyReport(
        family="little-m1-jacobi",
        params={"alpha": str(params.alpha), "beta": str(params.beta)},
        max_degree=max_degree,
        records=records,
        all_oracle_checks_passed=oracle_ok,
        skipped_degenerate=skipped,
    )
