"""Tests for the grouped-term bound tables and the H4,1 combination."""

from __future__ import annotations

import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from bounds import (
    A6_CONV_TABLE,
    A6_STAR_TABLE,
    A7_CONV_TABLE,
    A7_STAR_TABLE,
    T_TABLES,
    TABLES,
    U1_TABLE,
    U2_TABLE,
    U3_TABLE,
    BoundError,
    BoundSum,
    CubeVsP3,
    H41Inputs,
    MixedPair,
    PureGroup,
    PurePower,
    Radical,
    a67_bounds,
    bound_term,
    expanded_coefficient,
    expanded_t,
    falsify_bounds,
    get_table,
    h41_aggregate,
    h41_combination,
    table_report,
    term_violations,
    t_bounds,
    u_bounds,
)
from caratheodory import PSequence, random_exact_sequence, sample_p_batch
from classes import ClassTag, closed_coeffs
from hankel import t_functionals

F = Fraction
S, C = ClassTag.STARLIKE, ClassTag.CONVEX


def printed_tolerance(text: str) -> float:
    return 0.5 * 10.0 ** -len(text.split(".")[1])


@pytest.fixture(scope="module")
def exact_sequences():
    rng = np.random.default_rng(41)
    return [random_exact_sequence(rng) for _ in range(30)] + [PSequence.of(2, 2, 2, 2, 2, 2)]


@pytest.fixture(scope="module")
def sampled():
    batch = sample_p_batch(np.random.default_rng(43), 5000)
    return PSequence(tuple(batch), validate=False)


class TestRadicals:
    """Exact a·√b arithmetic."""

    def test_canonical_form(self) -> None:
        assert Radical.of(1, F(1, 2)).canonical() == (F(1, 2), 2)
        assert Radical.of(1, F(1, 2)) == Radical.of(F(1, 2), 2)

    def test_perfect_square_is_rational(self) -> None:
        r = Radical.of(3, 4)
        assert r.is_rational
        assert r == Radical.of(6)

    @pytest.mark.parametrize("name", sorted(TABLES))
    def test_table_radicals_square_back(self, name) -> None:
        for term in TABLES[name].terms:
            for r in (bound_term(term), term.printed):
                c, k = r.canonical()
                assert c * c * k == r.factor ** 2 * r.radicand
                assert (float(r) / float(r.factor)) ** 2 == pytest.approx(float(r.radicand), rel=1e-12)

    def test_float(self) -> None:
        assert float(Radical.of(2, 3)) == pytest.approx(2 * math.sqrt(3))

    def test_positive_radicand(self) -> None:
        with pytest.raises(BoundError, match="radicand"):
            Radical.of(1, 0)

    def test_sum_merges_like_radicals(self) -> None:
        total = BoundSum.of([Radical.of(1, 2), Radical.of(2, 8), Radical.of(3)])
        assert total.rational == 3
        assert total.radicals == ((2, F(5)),)
        assert float(total) == pytest.approx(3 + 5 * math.sqrt(2))
        assert total.exact() is None

    def test_rational_sum_is_exact(self) -> None:
        assert (BoundSum.of([Radical.of(1), Radical.of(F(1, 2))]) / 3).exact() == F(1, 2)


class TestShapes:
    """The three inequality shapes and pure groups."""

    def test_pure_power(self) -> None:
        t = PurePower(-3, (1, 2))
        assert t.bound() == Radical.of(12)
        assert t.evaluate(PSequence.of(F(1, 2), 2)) == -3

    def test_mixed_pair_inside_unit_interval(self) -> None:
        t = MixedPair((1,), 720, 4, -480, (2, 2))
        assert t.nu == F(2, 3)
        assert t.bound() == Radical.of(2 * 720 * 2)

    def test_mixed_pair_outside_unit_interval(self) -> None:
        t = MixedPair((), -14400, 2, -23472, (1, 1))
        assert t.nu == F(-23472, 14400)
        assert t.bound() == Radical.of(14400 * 2 * abs(2 * t.nu - 1))

    def test_mixed_pair_indices_must_add_up(self) -> None:
        with pytest.raises(BoundError, match="does not pair"):
            MixedPair((), 1, 4, 1, (1, 2))

    def test_index_range(self) -> None:
        with pytest.raises(BoundError, match="p6"):
            PurePower(1, (6,))

    def test_cube_with_radical(self) -> None:
        t = CubeVsP3((1, 1, 2), -7068, 25920)
        assert t.bound() == Radical.of(4976640, F(15, 1571))

    def test_empty_group(self) -> None:
        with pytest.raises(BoundError, match="empty"):
            PureGroup(())

    def test_unsupported_pattern(self) -> None:
        with pytest.raises(BoundError, match="unsupported"):
            bound_term("p1^2")

    def test_unknown_table(self) -> None:
        with pytest.raises(BoundError, match="unknown table"):
            get_table("T4")


class TestTables:
    """Aggregates and per-term constants."""

    @pytest.mark.parametrize("name", ["T1", "T2", "T3", "U1", "U2", "U3", "A7-CONV"])
    def test_printed_aggregate(self, name) -> None:
        report = table_report(TABLES[name])
        printed = report.printed_value
        assert abs(report.aggregate - float(printed)) <= printed_tolerance(printed)

    @pytest.mark.parametrize("table", [A6_STAR_TABLE, A6_CONV_TABLE, A7_STAR_TABLE],
                             ids=lambda t: t.name)
    def test_exact_aggregate(self, table) -> None:
        assert table_report(table).exact_aggregate() == F(table.printed_value)

    @pytest.mark.parametrize("table", T_TABLES, ids=lambda t: t.name)
    def test_starlike_constants_all_match(self, table) -> None:
        assert table_report(table).mismatched_terms == []

    @pytest.mark.parametrize("table, count", [(U1_TABLE, 3), (U2_TABLE, 1), (U3_TABLE, 1)],
                             ids=["U1", "U2", "U3"])
    def test_convex_constants_that_differ(self, table, count) -> None:
        assert len(table_report(table).mismatched_terms) == count

    def test_u1_rederived(self) -> None:
        report = table_report(U1_TABLE)
        assert report.exact_aggregate(rederived=True) == F(3106816, 132710400)
        assert report.rederived == pytest.approx(0.0234105, abs=5e-8)

    def test_u2_rederived(self) -> None:
        assert table_report(U2_TABLE).rederived == pytest.approx(0.0173904, abs=5e-8)

    def test_u3_aggregate_uses_summed_constant(self) -> None:
        report = table_report(U3_TABLE)
        assert report.rederived == pytest.approx(report.aggregate)

    def test_rederived_u_bounds_dominate(self) -> None:
        assert all(r >= p for r, p in zip(u_bounds(rederived=True), u_bounds()))

    def test_t_bounds_are_table_aggregates(self) -> None:
        assert t_bounds() == pytest.approx((0.616137358, 0.543486789, 0.665582094), abs=1e-9)

    @pytest.mark.parametrize("cls", [S, C])
    def test_expansions_are_the_functionals(self, cls, exact_sequences) -> None:
        for p in exact_sequences:
            assert expanded_t(cls, p) == t_functionals(closed_coeffs(cls, p))

    @pytest.mark.parametrize("table, cls, n", [
        (A6_STAR_TABLE, S, 6), (A6_CONV_TABLE, C, 6), (A7_STAR_TABLE, S, 7), (A7_CONV_TABLE, C, 7),
    ], ids=["a6-star", "a6-conv", "a7-star", "a7-conv"])
    def test_coefficient_expansions(self, table, cls, n, exact_sequences) -> None:
        for p in exact_sequences:
            assert expanded_coefficient(table, p) == closed_coeffs(cls, p)[n]

    @pytest.mark.parametrize("name", list(TABLES))
    def test_no_grouping_exceeds_its_bound(self, name, sampled) -> None:
        assert term_violations(TABLES[name], sampled) == 0


class TestCoefficientBounds:
    def test_starlike(self) -> None:
        assert a67_bounds(S) == (F(587, 1800), F(1397, 4320))

    def test_convex(self) -> None:
        a6, a7 = a67_bounds(C)
        assert a6 == F(587, 10800)
        assert a7 == pytest.approx(0.0403246, abs=5e-8)


class TestH41:
    """The triangle-inequality combination and its variants."""

    def test_combination_formula(self) -> None:
        inputs = H41Inputs(a4=1, a5=2, a6=3, a7=4, h31=F(1, 2), t=(1, 10, 100))
        assert h41_combination(inputs) == 4 * 0.5 + 3 * 1 + 2 * 10 + 1 * 100

    def test_starlike_variants(self) -> None:
        report = h41_aggregate(S)
        assert set(report.variants) == {"sharp", "comparison"}
        assert report.primary == "sharp"
        assert report.variants["comparison"] > report.variants["sharp"]
        assert report.printed_value == "0.29059"

    def test_convex_variants(self) -> None:
        report = h41_aggregate(C)
        assert len(report.variants) == 8
        assert report.primary == "sharp/a7-stated/U-printed"
        assert report.aggregate == report.variants[report.primary]
        assert report.variants["sharp/a7-groupings/U-rederived"] > report.aggregate

    def test_primary_inputs(self) -> None:
        inputs = h41_aggregate(S).inputs["sharp"]
        assert (inputs.a4, inputs.a5) == (F(17, 36), F(25, 72))
        assert inputs.h31 == F(1, 9)

    @pytest.mark.parametrize("cls", [S, C])
    def test_non_decreasing_in_each_input(self, cls) -> None:
        for inputs in h41_aggregate(cls).inputs.values():
            base = h41_combination(inputs)
            for name in ("a4", "a5", "a6", "a7", "h31"):
                raised = replace(inputs, **{name: float(getattr(inputs, name)) + 1e-3})
                assert h41_combination(raised) >= base
            for i in range(3):
                t = tuple(float(v) + (1e-3 if j == i else 0.0) for j, v in enumerate(inputs.t))
                assert h41_combination(replace(inputs, t=t)) >= base


class TestFalsification:
    """Sampled class members never break an asserted bound."""

    @pytest.mark.parametrize("cls", [S, C])
    def test_no_failures(self, cls) -> None:
        report = falsify_bounds(cls, 3000, seed=1)
        assert report.failures == []
        assert {r.name for r in report.rows} >= {"H31", "a6", "a7", "H41"}

    @pytest.mark.parametrize("cls", [S, C])
    def test_lowered_bounds_are_reported(self, cls) -> None:
        report = falsify_bounds(cls, 500, seed=1, overrides={"a7": 0.0, "H41": 0.0})
        assert {r.name for r in report.failures} == {"a7", "H41"}
        assert report.row("a7").bound == 0.0

    def test_sharp_value_is_reached(self) -> None:
        row = falsify_bounds(S, 100, seed=2).row("H31")
        assert row.supremum == pytest.approx(1 / 9, abs=1e-12)
        assert row.violations == 0

    def test_needs_samples(self) -> None:
        with pytest.raises(BoundError, match="at least one"):
            falsify_bounds(S, 0, seed=1)
