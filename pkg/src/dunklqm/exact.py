"""Exact rational arithmetic helpers: Pochhammer symbols, terminating
(generalized) hypergeometric series, and a float Beta function.

Everything rational is an exact ``fractions.Fraction``; no rounding happens
anywhere in this module except in :func:`beta_num`, which is deliberately a
float routine built on log-gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "DomainError",
    "NonTerminatingError",
    "SeriesDivisionByZero",
    "Rational",
    "rat",
    "pochhammer",
    "HypSeries",
    "hyp_eval",
    "hyp2f1",
    "hyp3f2",
    "beta_num",
]

Rational = Fraction


class DomainError(ValueError):
    """Argument outside the mathematical domain of the function."""


class NonTerminatingError(ValueError):
    """Hypergeometric series does not terminate and no truncation was given."""


class SeriesDivisionByZero(ZeroDivisionError):
    """A denominator Pochhammer vanishes inside the summation range."""


def rat(value) -> Fraction:
    """Coerce ints, "p/q" strings and Fractions to an exact Fraction.

    Floats are rejected: every rational entering the exact layer must be
    specified exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), exactly.

    (a)_0 = 1 for every a (empty product).
    """
    if n < 0:
        raise ValueError("pochhammer order must be nonnegative")
    a = rat(a)
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


def _is_nonpositive_int(q: Fraction) -> bool:
    return q.denominator == 1 and q.numerator <= 0


@dataclass(frozen=True)
class HypSeries:
    """A (generalized) hypergeometric series rFs(a_1..a_r; b_1..b_s; z).

    The series must terminate (some numerator parameter a nonpositive
    integer) unless ``max_terms`` supplies an explicit truncation order.
    """

    numerator_params: tuple
    denominator_params: tuple
    argument: Fraction
    max_terms: int | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "numerator_params",
                           tuple(rat(a) for a in self.numerator_params))
        object.__setattr__(self, "denominator_params",
                           tuple(rat(b) for b in self.denominator_params))
        object.__setattr__(self, "argument", rat(self.argument))

    def termination_order(self) -> int | None:
        """Index of the last potentially nonzero term, or None."""
        stops = [-a.numerator for a in self.numerator_params
                 if _is_nonpositive_int(a)]
        if not stops:
            return None
        return min(stops)


def hyp_eval(series: HypSeries) -> Fraction:
    """Exact value of a terminating hypergeometric series.

    Sums term by term with exact rationals. Raises NonTerminatingError when
    no numerator parameter is a nonpositive integer and no explicit
    truncation was requested, and SeriesDivisionByZero when a denominator
    Pochhammer vanishes before the series has terminated.
    """
    stop = series.termination_order()
    if stop is None:
        if series.max_terms is None:
            raise NonTerminatingError(
                "series does not terminate; supply max_terms explicitly")
        stop = series.max_terms - 1
    elif series.max_terms is not None:
        stop = min(stop, series.max_terms - 1)

    total = Fraction(0)
    term = Fraction(1)
    z = series.argument
    for n in range(stop + 1):
        total += term
        if n == stop:
            break
        for b in series.denominator_params:
            if b + n == 0:
                raise SeriesDivisionByZero(
                    f"denominator parameter {b} vanishes at term {n+1}")
        num = Fraction(1)
        for a in series.numerator_params:
            num *= a + n
        den = Fraction(n + 1)
        for b in series.denominator_params:
            den *= b + n
        term = term * num * z / den
    return total


def hyp2f1(a, b, c, z) -> Fraction:
    """Terminating Gauss 2F1(a, b; c; z), exact."""
    return hyp_eval(HypSeries((a, b), (c,), z))


def hyp3f2(a1, a2, a3, b1, b2, z) -> Fraction:
    """Terminating 3F2(a1, a2, a3; b1, b2; z), exact."""
    return hyp_eval(HypSeries((a1, a2, a3), (b1, b2), z))


def beta_num(x: float, y: float) -> float:
    """Beta function B(x, y) for positive arguments via log-gamma.

    Accurate to better than twelve significant figures over the parameter
    ranges used here.
    """
    if x <= 0 or y <= 0:
        raise DomainError(f"beta_num requires positive arguments, got ({x}, {y})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))
