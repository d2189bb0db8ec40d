"""Generalized Gegenbauer polynomials and the associated Schroedinger operator
with a reflection term.

The family consists of the symmetric polynomials orthogonal for the weight
|y|^(2 mu) (1-y^2)^alpha on [-1, 1]; they solve

    L P_n = lambda_n P_n,    L = (1 - y^2) T_mu^2 - 2 (alpha + 1) y T_mu,

with T_mu the Dunkl operator. Conjugating -L by the ground-state factor
F0 = |sin x|^mu cos^(alpha+1/2) x (after y = sin x) produces a Hamiltonian
-d^2/dx^2 + U0(x) + U1(x) R whose bound-state energies are -lambda_n >= 0.

The commonly printed rational-trig expressions for U0 and U1 carry constant
terms that are inconsistent with H F0 = 0 (U0 by -mu^2 - 1/4, U1's constant
with the opposite sign); the ``derived`` variant fixes them and reproduces
the Poeschl-Teller (mu = 0) and two-particle Calogero-Sutherland-Moser
(alpha = -1/2) special cases exactly. Both variants are exposed so that the
discrepancy can be measured rather than hidden.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import DomainError, rat
from .opalg import (
    DegenerateSpectrumError,
    MulPoly,
    Poly,
    ReflOp,
    compose,
    dunkl,
    matrix_on_basis,
    solve_monic_eigenvector,
)

__all__ = [
    "GegParams",
    "GegMoments",
    "lop_geg",
    "eigenvalue_geg",
    "construct_geg",
    "construct_geg_gram",
    "inner_geg",
    "geg_potentials",
    "ground_factor",
    "csm_two_particle_check",
    "verify_family_geg",
    "GEG_FUZZ_PARAMS",
]

GEG_FUZZ_PARAMS = (
    (Fraction(1, 2), Fraction(1)),
    (Fraction(1), Fraction(1, 2)),
    (Fraction(1, 3), Fraction(2)),
    (Fraction(3, 2), Fraction(1, 5)),
)


@dataclass(frozen=True)
class GegParams:
    mu: Fraction
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu", rat(self.mu))
        object.__setattr__(self, "alpha", rat(self.alpha))
        if self.mu <= Fraction(-1, 2) or self.alpha <= -1:
            raise ValueError("integrable weight requires mu > -1/2, alpha > -1")

    def label(self) -> str:
        return f"mu={self.mu}, alpha={self.alpha}"


class GegMoments:
    """Even moments of |y|^(2mu) (1-y^2)^alpha, normalized to m_0 = 1.

    Successive ratios come from Beta-integral recursion:
    m_{2n}/m_{2n-2} = (mu + n - 1/2)/(mu + n + alpha + 1/2); odd moments
    vanish by symmetry.
    """

    def __init__(self, params: GegParams):
        self.params = params
        self._even = [Fraction(1)]

    def moment(self, n: int) -> Fraction:
        if n % 2 == 1:
            return Fraction(0)
        k = n // 2
        while len(self._even) <= k:
            j = len(self._even)
            mu, al = self.params.mu, self.params.alpha
            ratio = (mu + j - Fraction(1, 2)) / (mu + j + al + Fraction(1, 2))
            self._even.append(self._even[-1] * ratio)
        return self._even[k]


def inner_geg(p: Poly, q: Poly, m: GegMoments) -> Fraction:
    total = Fraction(0)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            if b == 0:
                continue
            total += a * b * m.moment(i + j)
    return total


def lop_geg(params: GegParams) -> ReflOp:
    """L = (1-y^2) T_mu^2 - 2(alpha+1) y T_mu, degree preserving."""
    t = dunkl(params.mu)
    first = compose(ReflOp.from_primitive(MulPoly(Poly((1, 0, -1)))), compose(t, t))
    second = compose(ReflOp.from_primitive(MulPoly(Poly((0, 1)))), t)
    return first + second.scale(-2 * (params.alpha + 1))


def eigenvalue_geg(n: int, params: GegParams) -> Fraction:
    """-n(n+1+2 alpha+2 mu) for even n, -(2 mu+n)(2 alpha+n+1) for odd n."""
    mu, al = params.mu, params.alpha
    if n % 2 == 0:
        return Fraction(-n) * (n + 1 + 2 * al + 2 * mu)
    return -(2 * mu + n) * (2 * al + n + 1)


def construct_geg(n: int, params: GegParams) -> Poly:
    """Monic symmetric eigenpolynomial from the eigenvalue equation."""
    lam = eigenvalue_geg(n, params)
    for m in range(n):
        if eigenvalue_geg(m, params) == lam:
            raise DegenerateSpectrumError(
                f"lambda_{n} = lambda_{m} = {lam} at {params.label()}")
    mat = matrix_on_basis(lop_geg(params), n)
    return solve_monic_eigenvector(mat, lam, n)


def construct_geg_gram(n: int, params: GegParams,
                       moments: GegMoments | None = None) -> Poly:
    """Monic orthogonal polynomial from Gram elimination over GegMoments."""
    m = moments if moments is not None else GegMoments(params)
    prev: list[tuple[Poly, Fraction]] = []
    p = Poly.one()
    for k in range(n + 1):
        p = Poly.monomial(k)
        for q, qq in prev:
            r = inner_geg(p, q, m) / qq
            p = p - q.scale(r)
        if k < n:
            prev.append((p, inner_geg(p, p, m)))
    return p


# ---------------------------------------------------------------------------
# Schroedinger form
# ---------------------------------------------------------------------------

def ground_factor(params: GegParams, x: float) -> float:
    """F0(x) = |sin x|^mu cos^(alpha+1/2) x on (-pi/2, pi/2)."""
    if not (-math.pi / 2 < x < math.pi / 2):
        raise DomainError(f"x={x} outside (-pi/2, pi/2)")
    mu, al = float(params.mu), float(params.alpha)
    return abs(math.sin(x)) ** mu * math.cos(x) ** (al + 0.5)


def geg_potentials(params: GegParams, x: float,
                   variant: str = "printed") -> tuple[float, float, float]:
    """(U0(x), U1(x), F0(x)) for the reflection Schroedinger operator.

    ``printed`` evaluates the commonly typeset rational-trig expressions;
    ``derived`` the forms consistent with H = -F0 L F0^{-1} (which differ
    only in constants: U0 by mu^2 + 1/4, U1's constant by sign).
    """
    if variant not in ("printed", "derived"):
        raise ValueError(f"unknown variant {variant!r}")
    if x == 0.0 or abs(x) >= math.pi / 2:
        raise DomainError(f"potentials singular at x={x}")
    mu, al = float(params.mu), float(params.alpha)
    c2, s2 = math.cos(x) ** 2, math.sin(x) ** 2
    if variant == "printed":
        u0 = (al**2 * c2**2 + (mu**2 - 2 * al**2 + 0.25) * c2 + al**2 - 0.25) \
            / (c2 * s2) - al
        u1 = (2 * al + 1) * mu - mu / s2
    else:
        u0 = mu**2 / s2 + (al**2 - 0.25) / c2 - (mu + al + 0.5) ** 2 \
            + (2 * al + 1) * mu
        u1 = -mu / s2 - (2 * al + 1) * mu
    return u0, u1, ground_factor(params, x)


def csm_two_particle_check(mu, x1: float, x2: float) -> float:
    """Residual of the two-particle Calogero-Sutherland reduction.

    The two-body Hamiltonian with exchange term, at coupling beta = 2 mu and
    gamma = 2^{-1/2}, reduces in the relative coordinate x = (x1-x2)/sqrt(2)
    to mu^2/sin^2 x - (mu/sin^2 x) S12. Returns the larger of the two
    coefficient mismatches (scalar and exchange) against that target.
    """
    mu = float(rat(mu)) if not isinstance(mu, float) else mu
    if x1 == x2:
        raise DomainError("coincident particles")
    gamma = 2 ** -0.5
    s = math.sin(gamma * (x1 - x2))
    if s == 0.0:
        raise DomainError("sin(gamma (x1 - x2)) vanishes")
    beta = 2 * mu
    # pair term of the exchange Hamiltonian: beta gamma^2 (beta/2 - S12)/sin^2
    scalar_pair = beta * gamma**2 * (beta / 2) / s**2
    exchange_pair = -beta * gamma**2 / s**2
    x = (x1 - x2) / math.sqrt(2.0)
    scalar_rel = mu**2 / math.sin(x) ** 2
    exchange_rel = -mu / math.sin(x) ** 2
    return max(abs(scalar_pair - scalar_rel), abs(exchange_pair - exchange_rel))


def verify_family_geg(params: GegParams, max_degree: int) -> "GegFamilyReport":
    """Exact battery: eigen residuals, oracle agreement, parity, orthogonality."""
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    operator = lop_geg(params)
    moments = GegMoments(params)
    records = []
    all_ok = True
    constructed: list[Poly] = []
    skipped: list[int] = []
    for n in range(max_degree + 1):
        lam = eigenvalue_geg(n, params)
        try:
            pn = construct_geg(n, params)
        except DegenerateSpectrumError:
            skipped.append(n)
            continue
        res_zero = operator.apply(pn) == pn.scale(lam)
        gram_ok = construct_geg_gram(n, params, moments) == pn
        parity_ok = pn.reflect() == (pn if n % 2 == 0 else pn.scale(-1))
        orth_ok = all(inner_geg(pn, q, moments) == 0 for q in constructed)
        ok = res_zero and gram_ok and parity_ok and orth_ok
        all_ok = all_ok and ok
        records.append({
            "n": n,
            "eigenvalue": str(lam),
            "eigen_residual_zero": res_zero,
            "gram_matches_eigen": gram_ok,
            "parity_ok": parity_ok,
            "orthogonal": orth_ok,
        })
        constructed.append(pn)
    return GegFamilyReport(
        family="generalized-gegenbauer",
        params={"mu": str(params.mu), "alpha": str(params.alpha)},
        max_degree=max_degree,
        records=records,
        all_oracle_checks_passed=all_ok,
        skipped_degenerate=skipped,
    )


@dataclass
class GegFamilyReport:
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
            "records": list(self.records),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.as_json_dict(), indent=indent)
