"""
Triangle-inequality bound tables for T1..T3 (starlike), U1..U3 (convex), a6 and
a7, and the H4,1 combination built from them.

Each table is data: one GroupedTerm per printed grouping, carrying its shape
(which coefficient inequality bounds it), the constant printed next to it and,
where different, the constant that entered the printed aggregate.  The
re-derived constant always comes from bound_term.

Usage:
    >>> report = table_report(T1_TABLE)
    >>> round(report.aggregate, 6)
    0.616137
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from caratheodory import PSequence, bound_cube_parts, bound_mixed, sample_p_batch
from classes import (
    A5_INPUT,
    ClassTag,
    closed_coeffs,
    oracle_coeffs,
    sharp_initial_coefficients,
)
from hankel import h31, h41_decomposed, t_functionals

MAX_INDEX: int = 5


class BoundError(ValueError):
    """Raised for a grouping outside the three supported inequality shapes."""


# ──────────────────────────────────────────────────────────────────────────────
# 1. Exact radicals
# ──────────────────────────────────────────────────────────────────────────────

def _square_split(n: int) -> Tuple[int, int]:
    """n = s²·k with k squarefree; returns (s, k)."""
    s, k, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            k *= d
        d += 1
    return s, k * n


@dataclass(frozen=True)
class Radical:
    """factor·√radicand with rational factor and positive rational radicand."""

    factor: Fraction
    radicand: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if Fraction(self.radicand) <= 0:
            raise BoundError(f"radicand must be positive, got {self.radicand}")

    @classmethod
    def of(cls, factor: Any, radicand: Any = 1) -> "Radical":
        return cls(Fraction(factor), Fraction(radicand))

    def canonical(self) -> Tuple[Fraction, int]:
        """(c, k) with factor·√radicand = c·√k and k a squarefree integer."""
        r = Fraction(self.radicand)
        s, k = _square_split(r.numerator * r.denominator)
        return Fraction(self.factor) * Fraction(s, r.denominator), k

    @property
    def is_rational(self) -> bool:
        return self.canonical()[1] == 1

    def __float__(self) -> float:
        return float(self.factor) * math.sqrt(float(self.radicand))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Radical):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.factor)
        return f"{self.factor}·√({self.radicand})"


@dataclass(frozen=True)
class BoundSum:
    """Rational part plus like-radical parts, merged by squarefree radicand."""

    rational: Fraction
    radicals: Tuple[Tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, items: Sequence[Radical]) -> "BoundSum":
        rational = Fraction(0)
        merged: Dict[int, Fraction] = {}
        for item in items:
            c, k = item.canonical()
            if k == 1:
                rational += c
            else:
                merged[k] = merged.get(k, Fraction(0)) + c
        return cls(rational, tuple(sorted(merged.items())))

    def __float__(self) -> float:
        return float(self.rational) + sum(float(c) * math.sqrt(k) for k, c in self.radicals)

    def __truediv__(self, denominator: int) -> "BoundSum":
        return BoundSum(self.rational / denominator,
                        tuple((k, c / denominator) for k, c in self.radicals))

    def exact(self) -> Optional[Fraction]:
        """The value as a Fraction when no radical survives."""
        return None if self.radicals else self.rational

    def __str__(self) -> str:
        parts = [str(self.rational)] + [f"{c}·√{k}" for k, c in self.radicals]
        return " + ".join(parts)


# ──────────────────────────────────────────────────────────────────────────────
# 2. Grouping shapes
# ──────────────────────────────────────────────────────────────────────────────

Monomial = Tuple[int, ...]


def _check_indices(indices: Sequence[int]) -> None:
    for n in indices:
        if not 1 <= n <= MAX_INDEX:
            raise BoundError(f"p{n} is outside p1..p{MAX_INDEX}")


def _monomial_value(p: PSequence, monomial: Monomial) -> Any:
    value: Any = 1
    for n in monomial:
        value = value * p[n]
    return value


@dataclass(frozen=True)
class PurePower:
    """coeff·Π p_n, bounded by |coeff|·2^degree."""

    coeff: int
    monomial: Monomial

    def __post_init__(self) -> None:
        _check_indices(self.monomial)

    def bound(self) -> Radical:
        return Radical.of(abs(self.coeff) * 2 ** len(self.monomial))

    def evaluate(self, p: PSequence) -> Any:
        return self.coeff * _monomial_value(p, self.monomial)


@dataclass(frozen=True)
class MixedPair:
    """prefactor·(c_target·p_{n+k} + c_pair·p_n·p_k)."""

    prefactor: Monomial
    c_target: int
    target: int
    c_pair: int
    pair: Tuple[int, int]

    def __post_init__(self) -> None:
        _check_indices((*self.prefactor, self.target, *self.pair))
        if self.c_target == 0:
            raise BoundError("target coefficient must be non-zero")
        if self.pair[0] + self.pair[1] != self.target:
            raise BoundError(f"p{self.pair[0]}p{self.pair[1]} does not pair with p{self.target}")

    @property
    def nu(self) -> Fraction:
        return Fraction(-self.c_pair, self.c_target)

    def bound(self) -> Radical:
        scale = 2 ** len(self.prefactor) * abs(self.c_target)
        return Radical.of(scale * Fraction(bound_mixed(self.nu)))

    def evaluate(self, p: PSequence) -> Any:
        inner = (self.c_target * p[self.target]
                 + self.c_pair * p[self.pair[0]] * p[self.pair[1]])
        return _monomial_value(p, self.prefactor) * inner


@dataclass(frozen=True)
class CubeVsP3:
    """prefactor·(c_cube·p1³ + c_p3·p3)."""

    prefactor: Monomial
    c_cube: int
    c_p3: int

    def __post_init__(self) -> None:
        _check_indices(self.prefactor)
        if self.c_cube == 0:
            raise BoundError("cube coefficient must be non-zero")

    @property
    def nu(self) -> Fraction:
        return Fraction(-self.c_p3, self.c_cube)

    def bound(self) -> Radical:
        factor, radicand = bound_cube_parts(self.nu)
        return Radical.of(2 ** len(self.prefactor) * abs(self.c_cube) * factor, radicand)

    def evaluate(self, p: PSequence) -> Any:
        inner = self.c_cube * p[1] ** 3 + self.c_p3 * p[3]
        return _monomial_value(p, self.prefactor) * inner


@dataclass(frozen=True)
class PureGroup:
    """A sum of pure powers bounded term by term."""

    members: Tuple[PurePower, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise BoundError("empty group")

    def bound(self) -> Radical:
        return Radical.of(sum(Fraction(m.bound().factor) for m in self.members))

    def evaluate(self, p: PSequence) -> Any:
        total: Any = 0
        for m in self.members:
            total = total + m.evaluate(p)
        return total


Pattern = Union[PurePower, MixedPair, CubeVsP3, PureGroup]


@dataclass(frozen=True)
class GroupedTerm:
    label: str
    pattern: Pattern
    printed: Radical
    # constant the printed aggregate actually used, when it differs from *printed*
    summed: Optional[Radical] = None

    @property
    def in_aggregate(self) -> Radical:
        return self.summed if self.summed is not None else self.printed


def bound_term(t: Union[GroupedTerm, Pattern]) -> Radical:
    """Bound of one grouping from the coefficient inequalities."""
    pattern = t.pattern if isinstance(t, GroupedTerm) else t
    if not isinstance(pattern, (PurePower, MixedPair, CubeVsP3, PureGroup)):
        raise BoundError(f"unsupported grouping {pattern!r}")
    return pattern.bound()


def evaluate_term(t: GroupedTerm, p: PSequence) -> Any:
    """Signed value of the grouping at p."""
    return t.pattern.evaluate(p)


def _pp(coeff: int, *monomial: int) -> PurePower:
    return PurePower(coeff, tuple(monomial))


def _mp(prefactor: Monomial, c_target: int, target: int, c_pair: int,
        pair: Tuple[int, int]) -> MixedPair:
    return MixedPair(prefactor, c_target, target, c_pair, pair)


def _cube(prefactor: Monomial, c_cube: int, c_p3: int) -> CubeVsP3:
    return CubeVsP3(prefactor, c_cube, c_p3)


def _r(factor: int, radicand: Any = 1) -> Radical:
    return Radical.of(factor, radicand)


# ──────────────────────────────────────────────────────────────────────────────
# 3. Term tables
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TermTable:
    name: str
    cls: ClassTag
    denominator: int
    terms: Tuple[GroupedTerm, ...]
    # aggregate as printed (a decimal string or an exact fraction string)
    printed_value: str


T1_TABLE = TermTable("T1", ClassTag.STARLIKE, 5529600, (
    GroupedTerm("p1^4(581p1^3 + 5040p3)", _cube((1, 1, 1, 1), 581, 5040), _r(235648)),
    GroupedTerm("p1^2p2(25920p3 - 7068p1^3)", _cube((1, 1, 2), -7068, 25920),
                _r(4976640, Fraction(15, 1571))),
    GroupedTerm("p4(11040p1^3 - 115200p3)", _cube((4,), 11040, -115200),
                _r(1843200, Fraction(15, 217))),
    GroupedTerm("p2^2(7920p1^3 - 69120p3)", _cube((2, 2), 7920, -69120),
                _r(442368, Fraction(30, 17))),
    GroupedTerm("p1p2(74880p4 - 25920p2^2)", _mp((1, 2), 74880, 4, -25920, (2, 2)), _r(599040)),
    GroupedTerm("57600p1p3^2", _pp(57600, 1, 3, 3), _r(460800)),
    GroupedTerm("p5(138240p2 - 103680p1^2)", _mp((5,), 138240, 2, -103680, (1, 1)), _r(552960)),
), "0.616137")

T2_TABLE = TermTable("T2", ClassTag.STARLIKE, 22118400, (
    GroupedTerm("p1^5(235p1^3 + 8712p3)", _cube((1,) * 5, 235, 8712), _r(617728)),
    GroupedTerm("p1^3p2(37440p3 - 1156p1^3)", _cube((1, 1, 1, 2), -1156, 37440),
                _r(14376960, Fraction(65, 9071))),
    GroupedTerm("-p1p2^2(63360p3 + 14640p1^3)", _cube((1, 2, 2), -14640, -63360), _r(1950720)),
    GroupedTerm("p1p4(161280p3 - 8400p1^3)", _cube((1, 4), -8400, 161280),
                _r(737280, Fraction(42, 13))),
    GroupedTerm("p5(368640p3 - 76800p1^3)", _cube((5,), -76800, 368640),
                _r(2949120, Fraction(6, 19))),
    GroupedTerm("-8640p1^2p2^3", _pp(-8640, 1, 1, 2, 2, 2), _r(276480)),
    GroupedTerm("p4(172800p2^2 - 345600p4)", _mp((4,), -345600, 4, 172800, (2, 2)), _r(1382400)),
    GroupedTerm("-p3^2(184320p2 + 40320p1^2)", _mp((3, 3), -184320, 2, -40320, (1, 1)),
                _r(2119680)),
    GroupedTerm("p1p2(178560p1p4 - 184320p5)", _mp((1, 2), -184320, 5, 178560, (1, 4)),
                _r(1474560)),
), "0.543487")

T3_TABLE = TermTable("T3", ClassTag.STARLIKE, 597196800, (
    GroupedTerm("p1^5(6120p1^3 + 143424p3)", _cube((1,) * 5, 6120, 143424), _r(10745856)),
    GroupedTerm("-p1^6(425p1^3 + 9000p3)", _cube((1,) * 6, -425, -9000), _r(1369600)),
    GroupedTerm("p1^4p2(9000p1^3 + 172800p3)", _cube((1, 1, 1, 1, 2), 9000, 172800),
                _r(13363200)),
    GroupedTerm("p3^2(302400p1^3 - 2764800p3)", _cube((3, 3), 302400, -2764800),
                _r(58982400, Fraction(3, 19))),
    GroupedTerm("p2p4(1036800p1^3 + 6220800p3)", _cube((2, 4), 1036800, 6220800), _r(82944000)),
    GroupedTerm("p5(9953280p3 - 2073600p1^3)", _cube((5,), -2073600, 9953280),
                _r(79626240, Fraction(6, 19))),
    GroupedTerm("p1^3p2(967680p3 - 64512p1^3)", _cube((1, 1, 1, 2), -64512, 967680),
                _r(2211840, 210)),
    GroupedTerm("-p1^2p2^2(32400p1^3 + 777600p3)", _cube((1, 1, 2, 2), -32400, -777600),
                _r(29030400)),
    GroupedTerm("p1p4(1244160p3 - 259200p1^3)", _cube((1, 4), -259200, 1244160),
                _r(19906560, Fraction(6, 19))),
    GroupedTerm("p1p4(1555200p2^2 - 4665600p4)", _mp((1, 4), -4665600, 4, 1555200, (2, 2)),
                _r(37324800)),
    GroupedTerm("-p1p2(414720p2p3 + 4976640p5)", _mp((1, 2), -4976640, 5, -414720, (2, 3)),
                _r(46448640)),
    GroupedTerm("-p3^2(829440p2 + 829440p1^2)", _mp((3, 3), -829440, 2, -829440, (1, 1)),
                _r(19906560)),
    GroupedTerm("-17280p1^4p2^2 - 1036800p1p2p3^2 - 97200p1^5p4 - 172800p1^3p2^3",
                PureGroup((_pp(-17280, 1, 1, 1, 1, 2, 2), _pp(-1036800, 1, 2, 3, 3),
                           _pp(-97200, 1, 1, 1, 1, 1, 4), _pp(-172800, 1, 1, 1, 2, 2, 2))),
                _r(34974720)),
    GroupedTerm("p1^2p2(414720p2^2 - 622080p4)", _mp((1, 1, 2), -622080, 4, 414720, (2, 2)),
                _r(9953280)),
), "0.665582")

U1_TABLE = TermTable("U1", ClassTag.CONVEX, 132710400, (
    GroupedTerm("p1^5(487p1^2 - 6304p2)", _mp((1,) * 5, -6304, 2, 487, (1, 1)), _r(40320)),
    GroupedTerm("p1p2^2(11440p1^2 - 24960p2)", _mp((1, 2, 2), -24960, 2, 11440, (1, 1)),
                _r(399360)),
    GroupedTerm("p1p3(5280p1^3 + 34560p3)", _cube((1, 3), 5280, 34560), _r(445440)),
    GroupedTerm("p2p3(19200p1^2 - 53760p2)", _mp((2, 3), -53760, 2, 19200, (1, 1)), _r(430080)),
    GroupedTerm("p4(57600p1p2 - 138240p3)", _mp((4,), -138240, 3, 57600, (1, 2)), _r(55296)),
    GroupedTerm("p5(184320p2 - 92160p1^2)", _mp((5,), 184320, 2, -92160, (1, 1)), _r(73728)),
    GroupedTerm("8640p1^3p4", _pp(8640, 1, 1, 1, 4), _r(138240)),
), "0.0119242")

U2_TABLE = TermTable("U2", ClassTag.CONVEX, 1592524800, (
    GroupedTerm("p1^6(463p1^2 - 2732p2)", _mp((1,) * 6, -2732, 2, 463, (1, 1)), _r(349696)),
    GroupedTerm("-p1^2p2^2(23472p1^2 + 14400p2)", _mp((1, 1, 2, 2), -14400, 2, -23472, (1, 1)),
                _r(1963008)),
    GroupedTerm("p1^2p3(14592p1^3 - 108288p3)", _cube((1, 1, 3), 14592, -108288),
                _r(866304, Fraction(282, 61))),
    GroupedTerm("p1p2p3(92928p1^2 - 138240p2)", _mp((1, 2, 3), -138240, 2, 92928, (1, 1)),
                _r(2211840)),
    GroupedTerm("p1^2p4(373248p2 - 25344p1^2)", _mp((1, 1, 4), 373248, 2, -25344, (1, 1)),
                _r(5971968)),
    GroupedTerm("p4(276480p2^2 - 995328p4)", _mp((4,), -995328, 4, 276480, (2, 2)),
                _r(3981312)),
    GroupedTerm("p5(1105920p3 - 276480p1p2)", _mp((5,), 1105920, 3, -276480, (1, 2)),
                _r(4423680)),
    GroupedTerm("221184p1p3p4 - 161280p1^3p5 - 322560p2p3^2",
                PureGroup((_pp(221184, 1, 3, 4), _pp(-161280, 1, 1, 1, 5),
                           _pp(-322560, 2, 3, 3))),
                _r(6045696)),
), "0.0168348")

U3_TABLE = TermTable("U3", ClassTag.CONVEX, 38220595200, (
    GroupedTerm("p1^6(11424p1^2 - 128256p2)", _mp((1,) * 6, -128256, 2, 11424, (1, 1)),
                _r(16416768)),
    GroupedTerm("p1^7(10812p2 - 503p1^2)", _mp((1,) * 7, 10812, 2, -503, (1, 1)), _r(2767872)),
    GroupedTerm("p1^2p2^2(69120p1^2 + 552960p2)", _mp((1, 1, 2, 2), 552960, 2, 69120, (1, 1)),
                _r(22118400)),
    GroupedTerm("-p1^3p2^2(42192p1^2 + 181440p2)",
                _mp((1, 1, 1, 2, 2), -181440, 2, -42192, (1, 1)), _r(17012736)),
    GroupedTerm("p1^4p3(206208p2 - 11664p1^2)", _mp((1, 1, 1, 1, 3), 206208, 2, -11664, (1, 1)),
                _r(13197312)),
    GroupedTerm("p1p2p3(1889280p1^2 - 1658880p2)", _mp((1, 2, 3), -1658880, 2, 1889280, (1, 1)),
                _r(33914880)),
    GroupedTerm("-p3^2(2211840p1^2 + 2211840p2)", _mp((3, 3), -2211840, 2, -2211840, (1, 1)),
                _r(5308416), summed=_r(53084160)),
    GroupedTerm("p1p3^2(283392p1^2 - 967680p2)", _mp((1, 3, 3), -967680, 2, 283392, (1, 1)),
                _r(15482880)),
    GroupedTerm("p1p4(3317760p3 - 483840p1^3)", _cube((1, 4), -483840, 3317760),
                _r(106168320, Fraction(3, 41))),
    GroupedTerm("p1^3p4(1271808p2 - 117504p1^2)", _mp((1, 1, 1, 4), 1271808, 2, -117504, (1, 1)),
                _r(40697856)),
    GroupedTerm("p1p4(1658880p2^2 - 5971968p4)", _mp((1, 4), -5971968, 4, 1658880, (2, 2)),
                _r(47775744)),
    GroupedTerm("p3p4(6635520p2 - 331776p1^2)", _mp((3, 4), 6635520, 2, -331776, (1, 1)),
                _r(53084160)),
    GroupedTerm("p5(26542080p3 - 6635520p1p2)", _mp((5,), 26542080, 3, -6635520, (1, 2)),
                _r(106168320)),
    GroupedTerm("244224p1^5p3 - 794880p1^2p2^2p3 - 2764800p3^3 - 829440p1^2p2p4 - 3870720p1^3p5",
                PureGroup((_pp(244224, 1, 1, 1, 1, 1, 3), _pp(-794880, 1, 1, 2, 2, 3),
                           _pp(-2764800, 3, 3, 3), _pp(-829440, 1, 1, 2, 4),
                           _pp(-3870720, 1, 1, 1, 5))),
                _r(138387456)),
), "0.015406")

_A6_TERMS: Tuple[GroupedTerm, ...] = (
    GroupedTerm("p1^2(220p1p2 - 480p3)", _mp((1, 1), -480, 3, 220, (1, 2)), _r(3840)),
    GroupedTerm("p1(720p4 - 480p2^2)", _mp((1,), 720, 4, -480, (2, 2)), _r(2880)),
    GroupedTerm("-17p1^5", _pp(-17, 1, 1, 1, 1, 1), _r(544)),
    GroupedTerm("5760p5 - 480p2p3", _mp((), 5760, 5, -480, (2, 3)), _r(11520)),
)

A6_STAR_TABLE = TermTable("A6-STAR", ClassTag.STARLIKE, 57600, _A6_TERMS, "587/1800")
A6_CONV_TABLE = TermTable("A6-CONV", ClassTag.CONVEX, 345600, _A6_TERMS, "587/10800")

_A7_LEAD = GroupedTerm("p1^4(881p1^2 - 13260p2)", _mp((1, 1, 1, 1), -13260, 2, 881, (1, 1)),
                       _r(424320))

A7_STAR_TABLE = TermTable("A7-STAR", ClassTag.STARLIKE, 8294400, (
    _A7_LEAD,
    GroupedTerm("p2^2(48240p1^2 - 14400p2)", _mp((2, 2), -14400, 2, 48240, (1, 1)), _r(656640)),
    GroupedTerm("p1(69120p5 - 106560p2p3)", _mp((1,), 69120, 5, -106560, (2, 3)), _r(576000)),
    GroupedTerm("p1^2(29040p1p3 - 56160p4)", _mp((1, 1), -56160, 4, 29040, (1, 3)), _r(449280)),
    GroupedTerm("-57600p3^2 - 86400p2p4",
                PureGroup((_pp(-57600, 3, 3), _pp(-86400, 2, 4))), _r(576000)),
), "1397/4320")

A7_CONV_TABLE = TermTable("A7-CONV", ClassTag.CONVEX, 58060800, (
    _A7_LEAD,
    GroupedTerm("p1p2(48240p1p2 - 106560p3)", _mp((1, 2), -106560, 3, 48240, (1, 2)),
                _r(852480)),
    GroupedTerm("p3(29040p1^3 - 57600p3)", _cube((3,), 29040, -57600),
                _r(921600, Fraction(15, 119))),
    GroupedTerm("p1(69120p5 - 56160p1p4)", _mp((1,), 69120, 5, -56160, (1, 4)), _r(276480)),
    GroupedTerm("-p2(86400p4 + 14400p2^2)", _mp((2,), -86400, 4, -14400, (2, 2)), _r(460800)),
), "0.0403246")

# value stated for the convex a7 bound, below what its own groupings give
A7_CONV_STATED: str = "0.0343723"

T_TABLES: Tuple[TermTable, ...] = (T1_TABLE, T2_TABLE, T3_TABLE)
U_TABLES: Tuple[TermTable, ...] = (U1_TABLE, U2_TABLE, U3_TABLE)
TABLES: Dict[str, TermTable] = {
    t.name: t for t in (*T_TABLES, *U_TABLES, A6_STAR_TABLE, A6_CONV_TABLE,
                        A7_STAR_TABLE, A7_CONV_TABLE)
}


def get_table(name: str) -> TermTable:
    try:
        return TABLES[name]
    except KeyError:
        raise BoundError(f"unknown table {name!r}; known: {', '.join(TABLES)}") from None


# ──────────────────────────────────────────────────────────────────────────────
# 4. Reports
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TermBound:
    label: str
    printed: Radical
    rederived: Radical

    @property
    def matches(self) -> bool:
        return self.printed == self.rederived

    @property
    def value(self) -> float:
        return float(self.rederived)


@dataclass
class BoundReport:
    name: str
    denominator: int
    terms: List[TermBound]
    printed_sum: BoundSum
    rederived_sum: BoundSum
    printed_value: str

    @property
    def aggregate(self) -> float:
        """Aggregate from the printed arithmetic."""
        return float(self.printed_sum) / self.denominator

    @property
    def rederived(self) -> float:
        return float(self.rederived_sum) / self.denominator

    @property
    def mismatched_terms(self) -> List[TermBound]:
        return [t for t in self.terms if not t.matches]

    def exact_aggregate(self, rederived: bool = False) -> Optional[Fraction]:
        total = self.rederived_sum if rederived else self.printed_sum
        exact = total.exact()
        return None if exact is None else exact / self.denominator


def table_report(table: TermTable) -> BoundReport:
    terms = [TermBound(t.label, t.printed, bound_term(t)) for t in table.terms]
    return BoundReport(
        name=table.name,
        denominator=table.denominator,
        terms=terms,
        printed_sum=BoundSum.of([t.in_aggregate for t in table.terms]),
        rederived_sum=BoundSum.of([tb.rederived for tb in terms]),
        printed_value=table.printed_value,
    )


def t_bounds() -> Tuple[float, float, float]:
    """Bounds of |T1|, |T2|, |T3| over the starlike class."""
    a, b, c = (table_report(t).aggregate for t in T_TABLES)
    return a, b, c


def u_bounds(rederived: bool = False) -> Tuple[float, float, float]:
    """Bounds of |U1|, |U2|, |U3|; printed arithmetic unless *rederived*."""
    reports = [table_report(t) for t in U_TABLES]
    a, b, c = (r.rederived if rederived else r.aggregate for r in reports)
    return a, b, c


def a67_bounds(cls: ClassTag) -> Tuple[Fraction, float]:
    """(bound of |a6|, bound of |a7|); a6 is always exact."""
    if cls is ClassTag.STARLIKE:
        a6, a7 = table_report(A6_STAR_TABLE), table_report(A7_STAR_TABLE)
        a7_exact = a7.exact_aggregate()
        a7_value: Any = a7_exact if a7_exact is not None else a7.aggregate
    else:
        a6, a7 = table_report(A6_CONV_TABLE), table_report(A7_CONV_TABLE)
        a7_value = a7.aggregate
    a6_exact = a6.exact_aggregate()
    if a6_exact is None:
        raise BoundError(f"{a6.name} aggregate is not rational")
    return a6_exact, a7_value


def expanded_t(cls: ClassTag, p: PSequence) -> Tuple[Any, Any, Any]:
    """Signed sum of the grouped terms over each denominator (T or U tables)."""
    tables = T_TABLES if cls is ClassTag.STARLIKE else U_TABLES
    out = []
    for table in tables:
        total: Any = 0
        for term in table.terms:
            total = total + evaluate_term(term, p)
        out.append(_over(total, table.denominator))
    return out[0], out[1], out[2]


def expanded_coefficient(table: TermTable, p: PSequence) -> Any:
    """Signed sum of an a6/a7 table at p, i.e. the printed closed form."""
    total: Any = 0
    for term in table.terms:
        total = total + evaluate_term(term, p)
    return _over(total, table.denominator)


def term_violations(table: TermTable, p: PSequence, rel: float = 1e-9) -> int:
    """Samples where a grouping exceeds its re-derived bound."""
    count = 0
    for term in table.terms:
        limit = float(bound_term(term)) * (1 + rel)
        count += int(np.count_nonzero(np.abs(np.asarray(evaluate_term(term, p))) > limit))
    return count


def _over(value: Any, denominator: int) -> Any:
    if isinstance(value, (int, Fraction)):
        return Fraction(value) / denominator
    return value / denominator


# ──────────────────────────────────────────────────────────────────────────────
# 5. H4,1 combination
# ──────────────────────────────────────────────────────────────────────────────

# sharp H3,1 bounds and the earlier non-sharp comparison values
H31_SHARP: Dict[ClassTag, Fraction] = {
    ClassTag.STARLIKE: Fraction(1, 9),
    ClassTag.CONVEX: Fraction(1, 144),
}
H31_COMPARISON: Dict[ClassTag, str] = {ClassTag.STARLIKE: "0.385", ClassTag.CONVEX: "0.021"}
H41_PRINTED: Dict[ClassTag, str] = {ClassTag.STARLIKE: "0.29059", ClassTag.CONVEX: "0.00101775"}


@dataclass(frozen=True)
class H41Inputs:
    a4: Any
    a5: Any
    a6: Any
    a7: Any
    h31: Any
    t: Tuple[Any, Any, Any]


def h41_combination(inputs: H41Inputs) -> float:
    """|a7|·H31 + |a6|·T1 + |a5|·T2 + |a4|·T3."""
    t1, t2, t3 = (float(v) for v in inputs.t)
    return (abs(float(inputs.a7)) * float(inputs.h31) + abs(float(inputs.a6)) * t1
            + abs(float(inputs.a5)) * t2 + abs(float(inputs.a4)) * t3)


@dataclass
class H41Report:
    cls: ClassTag
    variants: Dict[str, float]
    primary: str
    printed_value: str
    inputs: Dict[str, H41Inputs] = field(default_factory=dict)

    @property
    def aggregate(self) -> float:
        return self.variants[self.primary]

    @property
    def gap(self) -> float:
        return self.aggregate - float(self.printed_value)


def h41_aggregate(cls: ClassTag) -> H41Report:
    """Every combination of the available inputs; the primary one uses the sharp H3,1."""
    a4 = sharp_initial_coefficients(cls)[2]
    a5 = A5_INPUT[cls]
    a6, a7 = a67_bounds(cls)
    h31_options = {"sharp": H31_SHARP[cls], "comparison": float(H31_COMPARISON[cls])}
    if cls is ClassTag.STARLIKE:
        a7_options: Dict[str, Any] = {"": a7}
        t_options: Dict[str, Tuple[Any, Any, Any]] = {"": t_bounds()}
    else:
        a7_options = {"/a7-stated": float(A7_CONV_STATED), "/a7-groupings": a7}
        t_options = {"/U-printed": u_bounds(), "/U-rederived": u_bounds(rederived=True)}

    variants: Dict[str, float] = {}
    inputs: Dict[str, H41Inputs] = {}
    for h_name, h in h31_options.items():
        for a7_name, a7_value in a7_options.items():
            for t_name, t in t_options.items():
                key = f"{h_name}{a7_name}{t_name}"
                inputs[key] = H41Inputs(a4, a5, a6, a7_value, h, t)
                variants[key] = h41_combination(inputs[key])
    primary = "sharp" if cls is ClassTag.STARLIKE else "sharp/a7-stated/U-printed"
    return H41Report(cls, variants, primary, H41_PRINTED[cls], inputs)


# ──────────────────────────────────────────────────────────────────────────────
# 6. Empirical falsification on genuine class members
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SampledBound:
    name: str
    bound: float
    supremum: float
    violations: int


@dataclass
class FalsificationReport:
    cls: ClassTag
    n_samples: int
    seed: int
    rows: List[SampledBound]

    def row(self, name: str) -> SampledBound:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def failures(self) -> List[SampledBound]:
        return [r for r in self.rows if r.violations]


def falsify_bounds(cls: ClassTag, n_samples: int, seed: int, slack: float = 1e-12,
                   overrides: Optional[Dict[str, float]] = None) -> FalsificationReport:
    """Evaluate every bounded quantity on sampled mixtures and count excesses.

    *overrides* replaces the bound of a named row (`"a7"`, `"H41"`, ...).
    """
    if n_samples < 1:
        raise BoundError(f"need at least one sample, got {n_samples}")
    rng = np.random.default_rng(seed)
    batch = sample_p_batch(rng, n_samples)
    p = PSequence(tuple(batch), validate=False)
    closed = closed_coeffs(cls, p)
    oracle = oracle_coeffs(cls, p, exact=False)

    t_values = t_functionals(closed)
    if cls is ClassTag.STARLIKE:
        t_names, t_claims = ("T1", "T2", "T3"), t_bounds()
    else:
        t_names, t_claims = ("U1", "U2", "U3"), u_bounds(rederived=True)
    a6_bound, a7_bound = a67_bounds(cls)
    h41 = h41_aggregate(cls)

    quantities: List[Tuple[str, Any, float]] = [
        ("H31", h31(closed), float(H31_SHARP[cls])),
        ("a6", closed[6], float(a6_bound)),
        ("a7", oracle[7], float(a7_bound)),
        ("H41", h41_decomposed(oracle), h41.aggregate),
    ]
    quantities += list(zip(t_names, t_values, t_claims))

    rows = []
    overrides = overrides or {}
    for name, values, bound in quantities:
        bound = overrides.get(name, bound)
        magnitude = np.abs(np.asarray(values))
        rows.append(SampledBound(
            name=name,
            bound=bound,
            supremum=float(magnitude.max()),
            violations=int(np.count_nonzero(magnitude > bound + slack)),
        ))
    return FalsificationReport(cls, n_samples, seed, rows)
