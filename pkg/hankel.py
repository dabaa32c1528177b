"""
Hankel determinant functionals of a normalized coefficient vector.

H_{q,n} is the determinant of the q×q matrix [a_{n+i+j}] (i, j = 0..q−1) with
a1 = 1.  The generic determinant uses fraction-free (Bareiss) elimination, so
exact inputs give exact outputs.  The closed expansions below (H3,1, the T
functionals) work element-wise on floats and numpy batches as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple

from classes import LAST_INDEX, CoefficientVector


class HankelError(ValueError):
    """Raised when a determinant needs coefficients that are not carried."""


@dataclass(frozen=True)
class HankelSpec:
    q: int
    n: int = 1

    def __post_init__(self) -> None:
        if self.q < 1 or self.n < 1:
            raise HankelError(f"q and n must be positive, got q={self.q}, n={self.n}")

    @property
    def max_index(self) -> int:
        """Largest coefficient index the matrix touches."""
        return self.n + 2 * self.q - 2


# ──────────────────────────────────────────────────────────────────────────────
# 1. Determinants
# ──────────────────────────────────────────────────────────────────────────────

def bareiss_det(matrix: Sequence[Sequence[Any]]) -> Any:
    """Fraction-free Gaussian elimination; swaps rows on a zero pivot."""
    m: List[List[Any]] = [list(row) for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise HankelError("determinant needs a square matrix")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
            if swap is None:
                return 0 * m[0][0]
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[-1][-1]


def hankel_matrix(c: CoefficientVector, spec: HankelSpec) -> List[List[Any]]:
    if spec.max_index > LAST_INDEX:
        raise HankelError(f"H_{{{spec.q},{spec.n}}} needs a{spec.max_index}; "
                          f"coefficients stop at a{LAST_INDEX}")
    return [[c[spec.n + i + j] for j in range(spec.q)] for i in range(spec.q)]


def hankel_det(c: CoefficientVector, spec: HankelSpec) -> Any:
    """det [a_{n+i+j}] computed exactly in the rational kernel."""
    return bareiss_det(hankel_matrix(c, spec))


# ──────────────────────────────────────────────────────────────────────────────
# 2. Closed expansions
# ──────────────────────────────────────────────────────────────────────────────

def h31(c: CoefficientVector) -> Any:
    """2a2a3a4 − a3³ − a4² − a2²a5 + a3a5."""
    a2, a3, a4, a5 = c[2], c[3], c[4], c[5]
    return 2 * a2 * a3 * a4 - a3 ** 3 - a4 ** 2 - a2 ** 2 * a5 + a3 * a5


def t_functionals(c: CoefficientVector) -> Tuple[Any, Any, Any]:
    """T1, T2, T3 in their printed form (identical for U1, U2, U3).

    T1 and T2 are the cofactor minors of a6 and a5; the printed T3 differs
    from the minor of a4 in its last term.
    """
    a2, a3, a4, a5, a6 = c[2], c[3], c[4], c[5], c[6]
    t1 = a6 * (a3 - a2 ** 2) + a3 * (a2 * a5 - a3 * a4) - a4 * (a5 - a2 * a4)
    t2 = a3 * (a3 * a5 - a4 ** 2) - a5 * (a5 - a2 * a4) + a6 * (a4 - a2 * a3)
    t3 = a4 * (a3 * a5 - a4 ** 2) - a5 * (a2 * a5 - a3 * a4) + a6 * (a4 - a2 * a3)
    return t1, t2, t3


def t_minors(c: CoefficientVector) -> Tuple[Any, Any, Any]:
    """Minors of a6, a5, a4 in the last column of the 4×4 Hankel matrix."""
    a2, a3, a4, a5, a6 = c[2], c[3], c[4], c[5], c[6]
    t1, t2, _ = t_functionals(c)
    t3 = a4 * (a3 * a5 - a4 ** 2) - a5 * (a2 * a5 - a3 * a4) + a6 * (a2 * a4 - a3 ** 2)
    return t1, t2, t3


def h41_decomposed(c: CoefficientVector) -> Any:
    """a7·H3,1 − a6·T1 + a5·T2 − a4·T3 with the cofactor minors."""
    t1, t2, t3 = t_minors(c)
    return c[7] * h31(c) - c[6] * t1 + c[5] * t2 - c[4] * t3


def t3_form_gap(c: CoefficientVector) -> Any:
    """Printed T3 minus the cofactor minor: a6(a4 − a2a3 − a2a4 + a3²)."""
    return t_functionals(c)[2] - t_minors(c)[2]
