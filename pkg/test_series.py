"""Tests for the truncated power-series kernel."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from series import (
    DEFAULT_ORDER,
    SeriesError,
    TruncatedSeries,
    add,
    derive,
    div,
    exp,
    integrate,
    integrate_div_t,
    log,
    mul,
    scale,
    shift,
)

F = Fraction


def series(*values, order=6, exact=True):
    return TruncatedSeries.from_coeffs(values, order, exact)


class TestConstruction:
    """Padding, promotion and ring checks."""

    def test_pads_to_order(self) -> None:
        s = series(1, 2, order=4)
        assert s.coeffs == (F(1), F(2), F(0), F(0), F(0))
        assert s.order == 4

    def test_truncates_past_order(self) -> None:
        assert series(1, 2, 3, 4, order=1).coeffs == (F(1), F(2))

    def test_ints_promote_to_fractions(self) -> None:
        assert all(isinstance(c, Fraction) for c in series(1, 2, 3).coeffs)

    def test_float_in_exact_kernel_rejected(self) -> None:
        with pytest.raises(SeriesError, match="rational"):
            series(1, 0.5)

    def test_mixed_rings_rejected(self) -> None:
        with pytest.raises(SeriesError, match="mixed exact and float"):
            TruncatedSeries((F(1), 0.5), exact=True)

    def test_negative_order_rejected(self) -> None:
        with pytest.raises(SeriesError, match="non-negative"):
            TruncatedSeries.from_coeffs([1], order=-1)

    def test_monomial_past_order_is_zero(self) -> None:
        assert TruncatedSeries.monomial(9, order=4) == TruncatedSeries.zero(4)

    def test_default_order_carries_a7(self) -> None:
        assert TruncatedSeries.one().order == DEFAULT_ORDER >= 7


class TestRing:
    """Sums, products and quotients."""

    def test_add_and_subtract(self) -> None:
        a, b = series(1, 2, 3), series(0, 1, F(1, 2))
        assert add(a, b) == series(1, 3, F(7, 2))
        assert (a - b) + b == a

    def test_scale(self) -> None:
        assert scale(series(1, 2), F(1, 2)) == series(F(1, 2), 1)

    def test_geometric_product(self) -> None:
        one_minus_z = series(1, -1)
        geometric = series(*([1] * 7))
        assert mul(one_minus_z, geometric) == TruncatedSeries.one(6)

    def test_div_inverts_mul(self) -> None:
        a, b = series(2, 1, 0, 3), series(1, F(1, 3), -1)
        assert div(mul(a, b), b) == a

    def test_div_by_zero_constant(self) -> None:
        with pytest.raises(SeriesError, match="zero constant term"):
            div(series(1), series(0, 1))

    def test_order_mismatch(self) -> None:
        with pytest.raises(SeriesError, match="order mismatch"):
            add(series(1, order=3), series(1, order=4))

    def test_ring_mismatch(self) -> None:
        with pytest.raises(SeriesError, match="scalar ring mismatch"):
            add(series(1), series(1, exact=False))

    def test_shift(self) -> None:
        assert shift(series(1, 2, 3, order=3), 2) == series(0, 0, 1, 2, order=3)


class TestTranscendental:
    """exp, log and the integrals used by the class solvers."""

    def test_exp_of_z(self) -> None:
        e = exp(series(0, 1, order=5))
        assert e.coeffs == (F(1), F(1), F(1, 2), F(1, 6), F(1, 24), F(1, 120))

    def test_exp_needs_zero_constant(self) -> None:
        with pytest.raises(SeriesError, match="zero constant"):
            exp(series(1, 1))

    def test_log_inverts_exp(self) -> None:
        a = series(0, F(1, 3), -2, F(5, 7), 0, 1)
        assert log(exp(a)) == a

    def test_log_of_one_plus_z(self) -> None:
        assert log(series(1, 1, order=4)).coeffs == (0, 1, F(-1, 2), F(1, 3), F(-1, 4))

    def test_log_needs_unit_constant(self) -> None:
        with pytest.raises(SeriesError, match="constant term 1"):
            log(series(2, 1))

    def test_integrate_div_t(self) -> None:
        assert integrate_div_t(series(0, 2, 3, 4)) == series(0, 2, F(3, 2), F(4, 3))

    def test_integrate_div_t_pole(self) -> None:
        with pytest.raises(SeriesError, match="pole"):
            integrate_div_t(series(1, 1))

    def test_integrate_and_derive(self) -> None:
        a = series(1, 2, 3, order=3)
        up = integrate(a)
        assert up.order == 4
        assert up.coeffs == (0, 1, 1, 1, 0)
        assert derive(up) == a

    def test_integrate_cap(self) -> None:
        assert integrate(series(1, 1, 1, order=3), max_order=3).order == 3


class TestFloatKernel:
    """The float kernel agrees with the exact one and batches over numpy arrays."""

    def test_exp_float_matches_exact(self) -> None:
        exact = exp(series(0, F(1, 2), F(1, 3), order=6))
        approx = exp(series(0, 0.5, 1 / 3, order=6, exact=False))
        assert [float(c) for c in exact.coeffs] == pytest.approx(list(approx.coeffs))

    def test_batched_exp(self) -> None:
        t = np.array([0.0, 1.0, 2.0])
        batch = TruncatedSeries.from_coeffs([0.0, t], order=3, exact=False)
        e = exp(batch)
        assert np.allclose(e[2], t * t / 2)
        assert np.allclose(e[3], t ** 3 / 6)

    def test_complex_coefficients(self) -> None:
        e = exp(series(0, 1j, order=2, exact=False))
        assert e[2] == pytest.approx(-0.5)
