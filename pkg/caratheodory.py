"""
Class-P machinery: the three-parameter description of (p2, p3, p4), genuine
P-sequences drawn from Herglotz mixtures, and the coefficient inequalities the
bound tables are built on.

A function p(z) = 1 + p1 z + p2 z^2 + ... with positive real part on the disk is
a mixture of half-plane kernels (1 + e^{iθ}z)/(1 - e^{iθ}z); its coefficients
are p_n = 2 Σ λ_j e^{inθ_j}.  Every sequence produced here comes from such a
mixture, so it is a genuine member of the class.

Usage:
    >>> m = MoebiusMixture(weights=(1.0,), angles=(0.0,))
    >>> sample_mixture(m, 3).values
    ((2+0j), (2+0j), (2+0j))
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

import numpy as np

from series import DEFAULT_ORDER, TruncatedSeries

P_LENGTH: int = 6
FLOAT_SLACK: float = 1e-12


class CaratheodoryError(ValueError):
    """Raised for parameters outside the class-P domain."""


# ──────────────────────────────────────────────────────────────────────────────
# 1. Scalar helpers (work for Fraction, float, complex and numpy arrays)
# ──────────────────────────────────────────────────────────────────────────────

def _conj(z: Any) -> Any:
    if isinstance(z, np.ndarray):
        return np.conj(z)
    return z.conjugate()


def _abs2(z: Any) -> Any:
    if isinstance(z, np.ndarray):
        return (z * np.conj(z)).real
    if isinstance(z, complex):
        return z.real * z.real + z.imag * z.imag
    return z * z


def _within(value: Any, limit: Any) -> bool:
    """|value|^2 <= limit^2, exactly for Fractions and with slack for floats."""
    a2 = _abs2(value)
    if isinstance(a2, Fraction):
        return a2 <= Fraction(limit) ** 2
    return bool(np.all(np.asarray(a2) <= limit * limit + FLOAT_SLACK))


# ──────────────────────────────────────────────────────────────────────────────
# 2. Parameter containers
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SchwarzParams:
    """(p1, γ, η, ρ) with p1 in [0, 2] and γ, η, ρ in the closed unit disk."""

    p1: Any
    gamma: Any = 0
    eta: Any = 0
    rho: Any = 0

    def __post_init__(self) -> None:
        p1 = self.p1
        if isinstance(p1, np.ndarray):
            ok = bool(np.all((p1 >= -FLOAT_SLACK) & (p1 <= 2 + FLOAT_SLACK)))
        else:
            ok = 0 <= p1 <= 2
        if not ok:
            raise CaratheodoryError(f"p1 must lie in [0, 2], got {self.p1!r}")
        for name in ("gamma", "eta", "rho"):
            if not _within(getattr(self, name), 1):
                raise CaratheodoryError(f"|{name}| must not exceed 1")


@dataclass(frozen=True)
class PSequence:
    """Coefficients p1..p6 of a class-P function; missing entries are 0."""

    values: Tuple[Any, ...]
    validate: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        if len(self.values) > P_LENGTH:
            raise CaratheodoryError(f"at most {P_LENGTH} coefficients, got {len(self.values)}")
        if self.validate:
            for n, value in enumerate(self.values, start=1):
                if not _within(value, 2):
                    raise CaratheodoryError(f"|p{n}| exceeds 2")

    @classmethod
    def of(cls, *values: Any, validate: bool = True) -> "PSequence":
        return cls(tuple(values), validate)

    def __getitem__(self, n: int) -> Any:
        """p_n with 1-based indexing; p_n = 0 past the populated entries."""
        if n < 1:
            raise IndexError("P-sequences are indexed from 1")
        if n > len(self.values):
            return 0 * self.values[0] if self.values else 0
        return self.values[n - 1]

    def padded(self, length: int = P_LENGTH) -> Tuple[Any, ...]:
        return tuple(self[n] for n in range(1, length + 1))

    def to_series(self, order: int = DEFAULT_ORDER, exact: bool = True) -> TruncatedSeries:
        """p(z) = 1 + Σ p_n z^n as a truncated series."""
        return TruncatedSeries.from_coeffs([1, *self.padded()], order, exact)


@dataclass(frozen=True)
class MoebiusMixture:
    """Convex combination Σ λ_j (1 + e^{iθ_j} z)/(1 - e^{iθ_j} z)."""

    weights: Tuple[float, ...]
    angles: Tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.weights or len(self.weights) != len(self.angles):
            raise CaratheodoryError("weights and angles must be non-empty and equal length")
        if any(w < 0 for w in self.weights):
            raise CaratheodoryError("mixture weights must be non-negative")
        total = sum(self.weights)
        if isinstance(total, Fraction):
            if total != 1:
                raise CaratheodoryError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > FLOAT_SLACK:
            raise CaratheodoryError(f"weights sum to {total}, not 1")


# ──────────────────────────────────────────────────────────────────────────────
# 3. Three-parameter formulas for p2, p3, p4
# ──────────────────────────────────────────────────────────────────────────────

def p2_from(sp: SchwarzParams) -> Any:
    """2 p2 = p1² + γ(4 − p1²)."""
    p, g = sp.p1, sp.gamma
    q = 4 - p * p
    return (p * p + g * q) / 2


def p3_from(sp: SchwarzParams) -> Any:
    """4 p3 = p1³ + 2(4 − p1²)p1γ − (4 − p1²)p1γ² + 2(4 − p1²)(1 − |γ|²)η."""
    p, g, e = sp.p1, sp.gamma, sp.eta
    q = 4 - p * p
    return (p ** 3 + 2 * q * p * g - q * p * g * g + 2 * q * (1 - _abs2(g)) * e) / 4


def p4_from(sp: SchwarzParams) -> Any:
    """8 p4 from p1, γ, η, ρ; the only place γ̄ enters."""
    p, g, e, r = sp.p1, sp.gamma, sp.eta, sp.rho
    q = 4 - p * p
    head = p ** 4 + q * g * (p * p * (g * g - 3 * g + 3) + 4 * g)
    tail = 4 * q * (1 - _abs2(g)) * (p * (g - 1) * e + _conj(g) * e * e - (1 - _abs2(e)) * r)
    return (head - tail) / 8


def p_sequence_from(sp: SchwarzParams, p5: Any = 0, p6: Any = 0) -> PSequence:
    """(p1, p2, p3, p4) from the parameters; p5 and p6 are free inputs."""
    return PSequence((sp.p1, p2_from(sp), p3_from(sp), p4_from(sp), p5, p6), validate=False)


# ──────────────────────────────────────────────────────────────────────────────
# 4. Genuine P-sequences
# ──────────────────────────────────────────────────────────────────────────────

def sample_mixture(m: MoebiusMixture, n_max: int = P_LENGTH) -> PSequence:
    """p_n = 2 Σ λ_j e^{inθ_j} for n = 1..n_max."""
    if not 1 <= n_max <= P_LENGTH:
        raise CaratheodoryError(f"n_max must be in 1..{P_LENGTH}, got {n_max}")
    weights = np.asarray(m.weights, dtype=float)
    angles = np.asarray(m.angles, dtype=float)
    values = tuple(complex(2 * np.sum(weights * np.exp(1j * n * angles)))
                   for n in range(1, n_max + 1))
    return PSequence(values)


def chebyshev_sequence(weights: Sequence[Fraction], cosines: Sequence[Fraction],
                       n_max: int = P_LENGTH) -> PSequence:
    """Exact p_n = 2 Σ λ_j T_n(c_j) for a mixture symmetric under θ -> -θ.

    Each atom with cos θ_j = c_j stands for the pair ±θ_j carrying weight λ_j/2,
    so rational weights and cosines give rational, genuine p_n.
    """
    if not weights or len(weights) != len(cosines):
        raise CaratheodoryError("weights and cosines must be non-empty and equal length")
    weights = [Fraction(w) for w in weights]
    cosines = [Fraction(c) for c in cosines]
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise CaratheodoryError("weights must be non-negative and sum to 1")
    if any(abs(c) > 1 for c in cosines):
        raise CaratheodoryError("cosines must lie in [-1, 1]")
    values: List[Fraction] = []
    for w, c in zip(weights, cosines):
        t_prev, t_cur = Fraction(1), c
        row = []
        for _ in range(n_max):
            row.append(t_cur)
            t_prev, t_cur = t_cur, 2 * c * t_cur - t_prev
        if not values:
            values = [2 * w * t for t in row]
        else:
            values = [v + 2 * w * t for v, t in zip(values, row)]
    return PSequence(tuple(values))


def cube_root_mixture() -> MoebiusMixture:
    """Equal atoms at the cube roots of unity: p(z) = (1 + z³)/(1 − z³)."""
    return MoebiusMixture(weights=(1 / 3, 1 / 3, 1 / 3),
                          angles=(0.0, 2 * math.pi / 3, 4 * math.pi / 3))


def random_mixture(rng: np.random.Generator, max_atoms: int = 5) -> MoebiusMixture:
    """Uniform weights (normalized exponentials) and uniform angles on [0, 2π)."""
    k = int(rng.integers(1, max_atoms + 1))
    raw = rng.exponential(size=k)
    return MoebiusMixture(weights=tuple(raw / raw.sum()),
                          angles=tuple(rng.uniform(0.0, 2 * math.pi, size=k)))


def random_exact_sequence(rng: np.random.Generator, max_atoms: int = 4,
                          denominator: int = 12) -> PSequence:
    """Exact genuine sequence from random rational weights and cosines."""
    k = int(rng.integers(1, max_atoms + 1))
    raw = [int(v) for v in rng.integers(1, denominator + 1, size=k)]
    total = sum(raw)
    weights = [Fraction(v, total) for v in raw]
    cosines = [Fraction(int(c), denominator)
               for c in rng.integers(-denominator, denominator + 1, size=k)]
    return chebyshev_sequence(weights, cosines)


def sample_p_batch(rng: np.random.Generator, n: int, max_atoms: int = 5,
                   n_max: int = P_LENGTH, include_extremal: bool = True) -> np.ndarray:
    """Array of shape (n_max, n): column j holds p1..p_{n_max} of one mixture.

    With *include_extremal* the first two columns are the w = z³ sequence
    (0, 0, 2, 0, 0, 2) and the all-2 sequence of the half-plane kernel.
    """
    if n < 1:
        raise CaratheodoryError(f"need at least one sample, got {n}")
    counts = rng.integers(1, max_atoms + 1, size=n)
    raw = rng.exponential(size=(n, max_atoms))
    raw[np.arange(max_atoms)[None, :] >= counts[:, None]] = 0.0
    weights = raw / raw.sum(axis=1, keepdims=True)
    angles = rng.uniform(0.0, 2 * math.pi, size=(n, max_atoms))
    orders = np.arange(1, n_max + 1)
    kernel = np.exp(1j * orders[:, None, None] * angles[None, :, :])
    batch = 2 * np.sum(weights[None, :, :] * kernel, axis=2)
    if include_extremal:
        batch[:, 0] = [2.0 if k % 3 == 0 else 0.0 for k in orders]
        if n > 1:
            batch[:, 1] = 2.0
    return batch


def random_schwarz_params(rng: np.random.Generator, n: int) -> SchwarzParams:
    """Batch of n parameter tuples; γ, η, ρ uniform on the closed disk."""
    def disk() -> np.ndarray:
        radius = np.sqrt(rng.uniform(0.0, 1.0, size=n))
        return radius * np.exp(1j * rng.uniform(0.0, 2 * math.pi, size=n))

    return SchwarzParams(p1=rng.uniform(0.0, 2.0, size=n), gamma=disk(), eta=disk(), rho=disk())


# ──────────────────────────────────────────────────────────────────────────────
# 5. Coefficient inequalities
# ──────────────────────────────────────────────────────────────────────────────

def bound_pn() -> int:
    """|p_n| <= 2."""
    return 2


def bound_mixed(nu: Any) -> Any:
    """Bound of |p_{n+k} − ν p_n p_k|: 2 on [0, 1], else 2|2ν − 1|."""
    if 0 <= nu <= 1:
        return 2
    return 2 * abs(2 * nu - 1)


def bound_cube_parts(nu: Fraction) -> Tuple[Fraction, Fraction]:
    """Exact (factor, radicand) with |p1³ − ν p3| <= factor·√radicand."""
    nu = Fraction(nu)
    if nu <= Fraction(4, 3):
        return 2 * abs(nu - 4), Fraction(1)
    return 2 * nu, nu / (nu - 1)


def bound_cube(nu: Any) -> float:
    """2|ν − 4| for ν <= 4/3, else 2ν√(ν/(ν − 1))."""
    if nu <= Fraction(4, 3):
        return float(2 * abs(nu - 4))
    return float(2 * nu * math.sqrt(nu / (nu - 1)))


MIXED_NUS: Tuple[Fraction, ...] = tuple(Fraction(v) for v in ("-1", "0", "1/4", "1/2", "3/4", "1", "2"))
CUBE_NUS: Tuple[Fraction, ...] = tuple(Fraction(v) for v in ("-2", "0", "1", "4/3", "2", "4", "8"))
INDEX_PAIRS: Tuple[Tuple[int, int], ...] = ((1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (1, 4),
                                            (3, 3), (2, 4), (1, 5))


def inequality_violations(batch: np.ndarray, rel: float = 1e-9) -> int:
    """Count samples (columns of a sample_p_batch array) breaking |p_n| <= 2,
    the mixed inequality or the cube inequality at the tabulated ν."""
    p = {n: batch[n - 1] for n in range(1, batch.shape[0] + 1)}
    count = int(np.count_nonzero(np.abs(batch) > 2 * (1 + rel)))
    for nu in MIXED_NUS:
        limit = float(bound_mixed(nu)) * (1 + rel)
        for n, k in INDEX_PAIRS:
            if n + k in p:
                count += int(np.count_nonzero(np.abs(p[n + k] - float(nu) * p[n] * p[k]) > limit))
    for nu in CUBE_NUS:
        limit = bound_cube(nu) * (1 + rel)
        count += int(np.count_nonzero(np.abs(p[1] ** 3 - float(nu) * p[3]) > limit))
    return count
