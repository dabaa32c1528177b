"""
Coefficient derivation for the exponential starlike and convex classes.

Two independent routes lead to (a2, ..., a7):
  - the series oracle, which integrates the defining differential relation
    for a given Schwarz function w;
  - the printed closed forms, polynomials in p1..p5 evaluated verbatim
    (a7 included, even though the true a7 also depends on p6).

Usage:
    >>> w = TruncatedSeries.monomial(3)
    >>> solve_starlike(w).a
    (Fraction(0, 1), Fraction(0, 1), Fraction(1, 3), Fraction(0, 1), Fraction(0, 1), Fraction(5, 36))
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Tuple

from caratheodory import PSequence, SchwarzParams, p_sequence_from
from series import (
    DEFAULT_ORDER,
    SeriesError,
    TruncatedSeries,
    div,
    exp,
    integrate,
    integrate_div_t,
)

FIRST_INDEX: int = 2
LAST_INDEX: int = 7


class ClassTag(str, Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"


@dataclass(frozen=True)
class CoefficientVector:
    """a2..a7 of f(z) = z + a2 z² + ...; a1 = 1 is implicit."""

    cls: ClassTag
    a: Tuple[Any, ...]

    def __post_init__(self) -> None:
        if len(self.a) != LAST_INDEX - FIRST_INDEX + 1:
            raise ValueError(f"expected a2..a{LAST_INDEX}, got {len(self.a)} values")

    def __getitem__(self, n: int) -> Any:
        if n == 1:
            return Fraction(1) if isinstance(self.a[0], Fraction) else 1.0
        if not FIRST_INDEX <= n <= LAST_INDEX:
            raise IndexError(f"a{n} is not carried (a1..a{LAST_INDEX})")
        return self.a[n - FIRST_INDEX]

    @property
    def a2(self) -> Any:
        return self[2]

    @property
    def a3(self) -> Any:
        return self[3]

    @property
    def a4(self) -> Any:
        return self[4]

    @property
    def a5(self) -> Any:
        return self[5]

    @property
    def a6(self) -> Any:
        return self[6]

    @property
    def a7(self) -> Any:
        return self[7]


# ──────────────────────────────────────────────────────────────────────────────
# 1. Series oracle
# ──────────────────────────────────────────────────────────────────────────────

def schwarz_from_p(p: TruncatedSeries) -> TruncatedSeries:
    """w = (p − 1)/(p + 1)."""
    if not _is_unit(p[0]):
        raise SeriesError("p must satisfy p(0) = 1")
    one = TruncatedSeries.one(p.order, p.exact)
    return div(p - one, p + one)


def _is_unit(value: Any) -> bool:
    try:
        return bool((value == 1).all())
    except AttributeError:
        return value == 1


def _log_derivative_integral(w: TruncatedSeries) -> TruncatedSeries:
    """∫₀^z (e^{w(t)} − 1)/t dt."""
    if w.order < LAST_INDEX - 1:
        raise SeriesError(f"w needs order >= {LAST_INDEX - 1}, got {w.order}")
    return integrate_div_t(exp(w) - TruncatedSeries.one(w.order, w.exact))


def solve_starlike(w: TruncatedSeries) -> CoefficientVector:
    """f = z·exp(∫₀^z (e^{w}−1)/t dt), so that z f'/f = e^{w}."""
    f_over_z = exp(_log_derivative_integral(w))
    return CoefficientVector(ClassTag.STARLIKE,
                             tuple(f_over_z[n - 1] for n in range(FIRST_INDEX, LAST_INDEX + 1)))


def solve_convex(w: TruncatedSeries) -> CoefficientVector:
    """f = ∫ exp(∫ (e^{w}−1)/t), so that 1 + z f''/f' = e^{w}."""
    f = integrate(exp(_log_derivative_integral(w)), max_order=LAST_INDEX)
    return CoefficientVector(ClassTag.CONVEX,
                             tuple(f[n] for n in range(FIRST_INDEX, LAST_INDEX + 1)))


def solve(cls: ClassTag, w: TruncatedSeries) -> CoefficientVector:
    return solve_starlike(w) if cls is ClassTag.STARLIKE else solve_convex(w)


def oracle_coeffs(cls: ClassTag, p: PSequence, exact: bool = True) -> CoefficientVector:
    """Series-derived coefficients for the P-sequence p (p6 included)."""
    w = schwarz_from_p(p.to_series(DEFAULT_ORDER, exact))
    return solve(cls, w)


# ──────────────────────────────────────────────────────────────────────────────
# 2. Printed closed forms
# ──────────────────────────────────────────────────────────────────────────────

# the convex denominators are n times the starlike ones
DENOMINATORS: Dict[ClassTag, Tuple[int, ...]] = {
    ClassTag.STARLIKE: (2, 16, 288, 1152, 57600, 8294400),
    ClassTag.CONVEX: (4, 48, 1152, 5760, 345600, 58060800),
}


def closed_numerators(p: PSequence) -> Tuple[Any, ...]:
    """Numerators of a2..a7 as printed; p6 does not appear."""
    p1, p2, p3, p4, p5 = p[1], p[2], p[3], p[4], p[5]
    n2 = p1
    n3 = p1 ** 2 + 4 * p2
    n4 = -p1 ** 3 + 12 * p1 * p2 + 48 * p3
    n5 = p1 ** 4 - 12 * p1 ** 2 * p2 + 24 * p1 * p3 + 144 * p4
    n6 = (-17 * p1 ** 5 + 220 * p1 ** 3 * p2 - 480 * p1 * p2 ** 2 - 480 * p1 ** 2 * p3
          - 480 * p2 * p3 + 720 * p1 * p4 + 5760 * p5)
    n7 = (881 * p1 ** 6 - 13260 * p1 ** 4 * p2 + 48240 * p1 ** 2 * p2 ** 2 - 14400 * p2 ** 3
          + 29040 * p1 ** 3 * p3 - 106560 * p1 * p2 * p3 - 57600 * p3 ** 2
          - 56160 * p1 ** 2 * p4 - 86400 * p2 * p4 + 69120 * p1 * p5)
    return n2, n3, n4, n5, n6, n7


def closed_coeffs(cls: ClassTag, p: PSequence) -> CoefficientVector:
    """The printed polynomials for a2..a7 evaluated at p."""
    values = tuple(_divide(n, d) for n, d in zip(closed_numerators(p), DENOMINATORS[cls]))
    return CoefficientVector(cls, values)


def _divide(numerator: Any, denominator: int) -> Any:
    if isinstance(numerator, (int, Fraction)):
        return Fraction(numerator, 1) / denominator
    return numerator / denominator


def coeffs_from_params(cls: ClassTag, sp: SchwarzParams, p5: Any = 0) -> CoefficientVector:
    """closed_coeffs at (p1, p2(sp), p3(sp), p4(sp), p5)."""
    return closed_coeffs(cls, p_sequence_from(sp, p5))


def a7_defect(cls: ClassTag, p: PSequence) -> Any:
    """Oracle a7 minus printed a7; equals p6/12 (starlike) or p6/84 (convex)."""
    return oracle_coeffs(cls, p)[7] - closed_coeffs(cls, p)[7]


def h31_polynomial(cls: ClassTag, p1: Any, p2: Any, p3: Any, p4: Any) -> Any:
    """H3,1 as a polynomial in p1..p4, over 331776 or 6635520."""
    if cls is ClassTag.STARLIKE:
        num = (-211 * p1 ** 6 + 420 * p1 ** 4 * p2 - 1872 * p1 ** 2 * p2 ** 2 - 5184 * p2 ** 3
               + 2544 * p1 ** 3 * p3 + 10944 * p1 * p2 * p3 - 9216 * p3 ** 2
               - 7776 * p1 ** 2 * p4 + 10368 * p2 * p4)
        return _divide(num, 331776)
    num = (-173 * p1 ** 6 + 552 * p1 ** 4 * p2 - 1872 * p1 ** 2 * p2 ** 2 - 3840 * p2 ** 3
           + 2208 * p1 ** 3 * p3 + 8064 * p1 * p2 * p3 - 11520 * p3 ** 2
           - 6912 * p1 ** 2 * p4 + 13824 * p2 * p4)
    return _divide(num, 6635520)


# ──────────────────────────────────────────────────────────────────────────────
# 3. Extremal functions and sharp initial coefficients
# ──────────────────────────────────────────────────────────────────────────────

EXTREMAL_CLASS: Dict[str, ClassTag] = {"f1": ClassTag.STARLIKE, "f2": ClassTag.CONVEX}

# a5 inputs used by the H4,1 combination; they are not sharp
A5_INPUT: Dict[ClassTag, Fraction] = {
    ClassTag.STARLIKE: Fraction(25, 72),
    ClassTag.CONVEX: Fraction(5, 72),
}


def extremal(which: str) -> CoefficientVector:
    """Coefficients of f1 (starlike) or f2 (convex), both driven by w = z³."""
    if which not in EXTREMAL_CLASS:
        raise ValueError(f"unknown extremal function {which!r}; expected f1 or f2")
    return solve(EXTREMAL_CLASS[which], TruncatedSeries.monomial(3))


def sharp_initial_coefficients(cls: ClassTag) -> Tuple[Fraction, Fraction, Fraction]:
    """a2, a3, a4 at w = z, which attain the sharp bounds of |a2|, |a3|, |a4|."""
    c = solve(cls, TruncatedSeries.monomial(1))
    return c[2], c[3], c[4]
