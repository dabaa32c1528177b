"""
Truncated formal power series over exact rationals or floats.

Every coefficient derivation in the toolkit runs through this module, so it is
the independent oracle the printed closed forms are compared against.

Two scalar kernels share one interface:
  - exact: every coefficient is a ``fractions.Fraction`` (ints are promoted);
  - float: Python floats / complex numbers, or numpy arrays holding a batch of
    series evaluated side by side.

Usage:
    >>> s = TruncatedSeries.from_coeffs([0, 1], order=4)
    >>> exp(s).coeffs
    (Fraction(1, 1), Fraction(1, 1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence, Tuple

import numpy as np

# a7 needs degree 7 of f, degree 6 of w and p
DEFAULT_ORDER: int = 8


class SeriesError(ValueError):
    """Raised when a series operation is outside its domain."""


# ──────────────────────────────────────────────────────────────────────────────
# 1. Scalar kernels
# ──────────────────────────────────────────────────────────────────────────────

def _is_exact(value: Any) -> bool:
    return isinstance(value, Fraction)


def _to_exact(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    raise SeriesError(f"exact kernel needs rational coefficients, got {value!r}")


def _is_zero(value: Any) -> bool:
    if isinstance(value, np.ndarray):
        return bool(np.all(value == 0))
    return value == 0


def _is_one(value: Any) -> bool:
    if isinstance(value, np.ndarray):
        return bool(np.all(value == 1))
    return value == 1


# ──────────────────────────────────────────────────────────────────────────────
# 2. Series container
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c0..c_order of a power series, everything mod z^(order+1)."""

    coeffs: Tuple[Any, ...]
    exact: bool = True

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        kinds = {_is_exact(c) for c in self.coeffs}
        if len(kinds) > 1:
            raise SeriesError("mixed exact and float coefficients in one series")
        if self.exact != kinds.pop():
            raise SeriesError("scalar ring flag does not match the coefficients")

    # ── constructors
    @classmethod
    def from_coeffs(cls, values: Iterable[Any], order: int | None = None,
                    exact: bool = True) -> "TruncatedSeries":
        """Build a series, padding with zeros (or truncating) to *order*."""
        values = list(values)
        if order is None:
            order = max(len(values) - 1, 0)
        if order < 0:
            raise SeriesError(f"order must be non-negative, got {order}")
        values = values[: order + 1]
        values += [0] * (order + 1 - len(values))
        if exact:
            coeffs = tuple(_to_exact(v) for v in values)
        else:
            coeffs = tuple(v if isinstance(v, np.ndarray) else _as_float(v)
                           for v in values)
        return cls(coeffs, exact)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER, exact: bool = True) -> "TruncatedSeries":
        return cls.from_coeffs([], order, exact)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER, exact: bool = True) -> "TruncatedSeries":
        return cls.from_coeffs([1], order, exact)

    @classmethod
    def monomial(cls, degree: int, coefficient: Any = 1,
                 order: int = DEFAULT_ORDER, exact: bool = True) -> "TruncatedSeries":
        """c·z^degree, or the zero series when degree exceeds *order*."""
        values = [0] * (order + 1)
        if degree <= order:
            values[degree] = coefficient
        return cls.from_coeffs(values, order, exact)

    # ── accessors
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Any:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, scale(other, -1))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return div(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.order != other.order or self.exact != other.exact:
            return False
        return all(bool(np.all(a == b)) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        if not self.exact:
            raise TypeError("float series are not hashable")
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries([{terms}], order={self.order})"


def _as_float(value: Any) -> Any:
    if isinstance(value, complex):
        return value
    if isinstance(value, numbers.Complex) and not isinstance(value, numbers.Real):
        return complex(value)
    return float(value)


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} vs {b.order}")
    if a.exact != b.exact:
        raise SeriesError("scalar ring mismatch: exact vs float")


def _build(values: Sequence[Any], exact: bool) -> TruncatedSeries:
    return TruncatedSeries(tuple(values), exact)


def _ratio(value: Any, k: int, exact: bool) -> Any:
    return value / Fraction(k) if exact else value / k


# ──────────────────────────────────────────────────────────────────────────────
# 3. Ring operations
# ──────────────────────────────────────────────────────────────────────────────

def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient-wise sum."""
    _check_compatible(a, b)
    return _build([x + y for x, y in zip(a.coeffs, b.coeffs)], a.exact)


def scale(a: TruncatedSeries, factor: Any) -> TruncatedSeries:
    """Multiply every coefficient by a scalar of the same ring."""
    if a.exact:
        factor = _to_exact(factor)
    return _build([factor * c for c in a.coeffs], a.exact)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    _check_compatible(a, b)
    n = a.order
    out = []
    for k in range(n + 1):
        total = a[0] * b[k]
        for i in range(1, k + 1):
            total = total + a[i] * b[k - i]
        out.append(total)
    return _build(out, a.exact)


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient q with q·b = a through the truncation order; needs b(0) != 0."""
    _check_compatible(a, b)
    if _is_zero(b[0]):
        raise SeriesError("divisor has zero constant term")
    q = []
    for k in range(a.order + 1):
        total = a[k]
        for i in range(1, k + 1):
            total = total - b[i] * q[k - i]
        q.append(total / b[0])
    return _build(q, a.exact)


def exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) from y' = a'y: k·y_k = Σ j·a_j·y_{k-j}. Needs a(0) = 0."""
    if not _is_zero(a[0]):
        raise SeriesError("exp needs a zero constant term")
    y = [Fraction(1) if a.exact else _one_like(a[0])]
    for k in range(1, a.order + 1):
        total = 0 * a[0]
        for j in range(1, k + 1):
            total = total + j * a[j] * y[k - j]
        y.append(_ratio(total, k, a.exact))
    return _build(y, a.exact)


def log(a: TruncatedSeries) -> TruncatedSeries:
    """Inverse of exp: L with exp(L) = a and L(0) = 0. Needs a(0) = 1."""
    if not _is_one(a[0]):
        raise SeriesError("log needs constant term 1")
    # a' = L'·a  ->  k·a_k = Σ_{j=1..k} j·L_j·a_{k-j}
    out = [0 * a[0]]
    for k in range(1, a.order + 1):
        total = k * a[k]
        for j in range(1, k):
            total = total - j * out[j] * a[k - j]
        out.append(_ratio(total, k, a.exact))
    return _build(out, a.exact)


def integrate_div_t(a: TruncatedSeries) -> TruncatedSeries:
    """∫₀^z a(t)/t dt term-wise: a_k z^k -> (a_k/k) z^k. Needs a(0) = 0."""
    if not _is_zero(a[0]):
        raise SeriesError("a(t)/t has a pole at 0: constant term must vanish")
    out = [a[0]] + [_ratio(a[k], k, a.exact) for k in range(1, a.order + 1)]
    return _build(out, a.exact)


def derive(a: TruncatedSeries) -> TruncatedSeries:
    """Term-wise derivative; the order drops by one (floor 0)."""
    if a.order == 0:
        return _build([0 * a[0]], a.exact)
    return _build([k * a[k] for k in range(1, a.order + 1)], a.exact)


def integrate(a: TruncatedSeries, max_order: int | None = None) -> TruncatedSeries:
    """Antiderivative with zero constant; the order rises by one, capped at *max_order*."""
    out = [0 * a[0]] + [_ratio(a[k], k + 1, a.exact) for k in range(a.order + 1)]
    if max_order is not None:
        out = out[: max_order + 1]
    return _build(out, a.exact)


def shift(a: TruncatedSeries, k: int = 1) -> TruncatedSeries:
    """Multiply by z^k keeping the order (higher terms fall off)."""
    zero = 0 * a[0]
    out = [zero] * k + list(a.coeffs[: a.order + 1 - k])
    return _build(out[: a.order + 1], a.exact)


def _one_like(sample: Any) -> Any:
    if isinstance(sample, np.ndarray):
        return np.ones_like(sample)
    return 1.0 if not isinstance(sample, complex) else complex(1.0)
