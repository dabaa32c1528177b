"""
Box-constrained maximization (grid scan + coordinate-wise golden-section
polish) and bracketing bisection, plus the claims that reproduce every
optimizer-derived constant of the H3,1 proofs.

Objectives take numpy arrays (one per box dimension) and return an array of the
same shape, so the coarse scan is a single vectorized call.

Usage:
    >>> spec = BoxSpec(lower=(0.0,), upper=(1.0,), density=101)
    >>> res = maximize_box(lambda x: x * (1 - x * x) / 8, spec)
    >>> round(res.point[0], 6)
    0.57735
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from classes import ClassTag
from objective import (
    N,
    M,
    face_restriction,
    majorant,
    r3_slope,
    s2_critical_polynomial,
    stationary_y,
    stationary_y_grid,
    yp_threshold,
)
from verification_framework import Claim, ClaimRecord, RunConfig, evaluate_claim

INV_PHI: float = (math.sqrt(5) - 1) / 2
INV_PHI_SQ: float = (3 - math.sqrt(5)) / 2
TIE_EPS: float = 1e-15
MAX_SWEEPS: int = 50

Objective = Callable[..., np.ndarray]


class OptimizeError(ValueError):
    """Raised for malformed boxes, non-finite objectives and unbracketed roots."""


@dataclass(frozen=True)
class BoxSpec:
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    density: int = 100
    sweeps: int = MAX_SWEEPS
    tol: float = 1e-10

    def __post_init__(self) -> None:
        if not 1 <= len(self.lower) <= 3 or len(self.lower) != len(self.upper):
            raise OptimizeError("a box has 1 to 3 dimensions with matching bounds")
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise OptimizeError(f"empty box {self.lower} .. {self.upper}")
        if self.density < 2:
            raise OptimizeError(f"grid density must be at least 2, got {self.density}")
        if self.tol <= 0:
            raise OptimizeError(f"tolerance must be positive, got {self.tol}")

    @property
    def dims(self) -> int:
        return len(self.lower)


@dataclass(frozen=True)
class OptResult:
    point: Tuple[float, ...]
    value: float
    evaluations: int
    trace_length: int


# ──────────────────────────────────────────────────────────────────────────────
# 1. Maximization
# ──────────────────────────────────────────────────────────────────────────────

def _finite(value: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(value)):
        raise OptimizeError("objective returned a non-finite value")
    return value


def _golden_max(g: Callable[[float], float], a: float, b: float, tol: float) -> Tuple[float, int]:
    """Golden-section search for a maximum of g on [a, b]; returns (x, evaluations)."""
    dist = b - a
    if dist <= tol:
        return (a + b) / 2, 0
    n = int(np.ceil(np.log(tol / dist) / np.log(INV_PHI)))
    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    yc, yd = g(c), g(d)
    for _ in range(n - 1):
        if yc > yd:
            b, d, yd = d, c, yc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            yc = g(c)
        else:
            a, c, yc = c, d, yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            yd = g(d)
    return ((a + d) / 2 if yc > yd else (c + b) / 2), n + 1


def _evaluate(f: Objective, point: Sequence[float]) -> float:
    value = float(np.asarray(f(*(np.float64(v) for v in point))))
    if not math.isfinite(value):
        raise OptimizeError(f"objective is not finite at {tuple(point)}")
    return value


def maximize_box(f: Objective, spec: BoxSpec) -> OptResult:
    """Grid scan, then coordinate-wise golden-section polish around the best cell.

    Ties within 1e-15 go to the lexicographically smallest grid point, and a
    polish step is only kept when it strictly improves the incumbent.
    """
    axes = [np.linspace(lo, hi, spec.density) for lo, hi in zip(spec.lower, spec.upper)]
    mesh = np.meshgrid(*axes, indexing="ij")
    values = _finite(np.asarray(f(*mesh), dtype=float) * np.ones(mesh[0].shape))
    evaluations = values.size

    best = values.max()
    # argwhere walks C order, which is lexicographic on increasing axes
    idx = tuple(np.argwhere(values >= best - TIE_EPS)[0])
    point = [float(axes[k][i]) for k, i in enumerate(idx)]
    value = _evaluate(f, point)
    steps = [(hi - lo) / (spec.density - 1) for lo, hi in zip(spec.lower, spec.upper)]

    trace = 0
    for _ in range(spec.sweeps):
        improved = False
        for k in range(spec.dims):
            lo = max(spec.lower[k], point[k] - steps[k])
            hi = min(spec.upper[k], point[k] + steps[k])

            def along(t: float, k: int = k) -> float:
                trial = list(point)
                trial[k] = t
                return _evaluate(f, trial)

            x_new, n_eval = _golden_max(along, lo, hi, spec.tol)
            evaluations += n_eval
            for candidate in (x_new, lo, hi):
                v = along(candidate)
                evaluations += 1
                if v > value:
                    point[k], value, improved = candidate, v, True
        trace += 1
        if not improved:
            break
        steps = [s / 2 for s in steps]
    return OptResult(tuple(point), value, evaluations, trace)


# ──────────────────────────────────────────────────────────────────────────────
# 2. Root finding
# ──────────────────────────────────────────────────────────────────────────────

def find_root_1d(g: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10) -> float:
    """Bisection on a sign change of g; returns the midpoint of the final bracket."""
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0:
        return lo
    if g_hi == 0:
        return hi
    if g_lo * g_hi > 0:
        raise OptimizeError(f"no sign change on [{lo}, {hi}]")
    n = max(int(math.ceil(math.log(abs(hi - lo) / tol) / math.log(2.0))), 0)
    for _ in range(n):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0:
            return mid
        if g_lo * g_mid < 0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    return 0.5 * (lo + hi)


# ──────────────────────────────────────────────────────────────────────────────
# 3. Interior stationary points
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class InteriorScan:
    cls: ClassTag
    points: int
    hits: int
    x_extent: float
    max_value: float


def interior_stationary_scan(cls: ClassTag, density: int = 200) -> InteriorScan:
    """Grid points of (0,2)×(0,1) whose stationary y lies strictly inside (0,1)."""
    p_axis = np.linspace(0.0, 2.0, density + 2)[1:-1]
    x_axis = np.linspace(0.0, 1.0, density + 2)[1:-1]
    p, x = np.meshgrid(p_axis, x_axis, indexing="ij")
    y = stationary_y_grid(cls, p, x)
    hit = np.isfinite(y) & (y > 0) & (y < 1)
    if not hit.any():
        return InteriorScan(cls, p.size, 0, 0.0, 0.0)
    values = majorant(cls, p[hit], x[hit], y[hit], check=False)
    return InteriorScan(cls, p.size, int(hit.sum()), float(x[hit].max()), float(values.max()))


def stationary_region_x_limit() -> float:
    """x where the starlike y0 reaches 1 on the p = 2 boundary."""
    def g(x: float) -> float:
        y = stationary_y(ClassTag.STARLIKE, 2.0, x)
        return (y if y is not None else math.inf) - 1.0
    return find_root_1d(g, 0.0, 0.9)


# ──────────────────────────────────────────────────────────────────────────────
# 4. Critical-constant claims
# ──────────────────────────────────────────────────────────────────────────────

def _cuboid(density: int, tol: float) -> BoxSpec:
    return BoxSpec(lower=(0.0, 0.0, 0.0), upper=(2.0, 1.0, 1.0), density=density, tol=tol)


def maximize_majorant(cls: ClassTag, density: int = 100, tol: float = 1e-10) -> OptResult:
    f = M if cls is ClassTag.STARLIKE else N
    return maximize_box(lambda p, x, y: f(p, x, y, check=False), _cuboid(density, tol))


def maximize_face(cls: ClassTag, face: str, lower: Sequence[float], upper: Sequence[float],
                  density: int = 100, tol: float = 1e-10) -> OptResult:
    spec = BoxSpec(tuple(lower), tuple(upper), density=density, tol=tol)
    return maximize_box(lambda *args: face_restriction(cls, face, *args), spec)


def _edge_max(cls: ClassTag, face: str, hi: float, which: int) -> Callable[[RunConfig], float]:
    def compute(cfg: RunConfig) -> float:
        res = maximize_face(cls, face, (0.0,), (hi,), density=max(cfg.grid, 2), tol=cfg.tol)
        return res.point[0] if which == 0 else res.value
    return compute


def _root(g: Callable[[float], float]) -> Callable[[RunConfig], float]:
    return lambda cfg: find_root_1d(g, 1.0, 2.0, cfg.tol)


_S = ClassTag.STARLIKE
_C = ClassTag.CONVEX


def critical_constant_claims() -> List[Claim]:
    """Claims on sharp maxima, edge maxima and their locations, roots and corners."""
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    return [
        Claim("H31-STAR-SHARP", _S, "1/9",
              lambda cfg: maximize_majorant(_S, cfg.grid, cfg.tol).value,
              "starlike sharp bound: |H3,1| <= 1/9, maximum of M over the cuboid", tolerance=1e-9),
        Claim("H31-CONV-SHARP", _C, "1/144",
              lambda cfg: maximize_majorant(_C, cfg.grid, cfg.tol).value,
              "convex sharp bound: |H3,1| <= 1/144, maximum of N over the cuboid", tolerance=1e-9),
        Claim("M-CORNER-P2", _S, "13/5184", lambda cfg: M(Fraction(2), half, third),
              "starlike p = 2 face: M(2, x, y) = 13/5184"),
        Claim("N-CORNER-P2", _C, "1/20736", lambda cfg: N(Fraction(2), half, third),
              "convex p = 2 face: N(2, x, y) = 1/20736"),
        Claim("N-EDGE-P0-X1", _C, "1/270", lambda cfg: N(Fraction(0), Fraction(1), third),
              "convex edge p = 0, x = 1: N(0, 1, y) = 1/270"),
        Claim("M-EDGE-P0-X1", _S, "0", lambda cfg: M(Fraction(0), Fraction(1), third),
              "starlike edge p = 0, x = 1: M(0, 1, y) = 0"),
        Claim("M-EDGE-X0Y0-ARGMAX", _S, "1.4367", _edge_max(_S, "x=0,y=0", 2.0, 0),
              "starlike edge x = 0, y = 0: critical point of M(p, 0, 0)"),
        Claim("M-EDGE-X0Y0-MAX", _S, "0.0159535", _edge_max(_S, "x=0,y=0", 2.0, 1),
              "starlike edge x = 0, y = 0: M(p, 0, 0) <= 0.0159535"),
        Claim("M-FACE-X1-ARGMAX", _S, "1.43461", _root(r3_slope),
              "starlike face x = 1: critical point of M(p, 1, y)"),
        Claim("M-FACE-X1-MAX", _S, "0.0398426", _edge_max(_S, "x=1", 2.0, 1),
              "starlike face x = 1: maximum 0.0398426"),
        Claim("M-EDGE-P0Y0-ARGMAX", _S, 1 / math.sqrt(3), _edge_max(_S, "p=0,y=0", 1.0, 0),
              "starlike edge p = 0, y = 0: critical point x = 1/sqrt(3)", tolerance=1e-6),
        Claim("M-EDGE-P0Y0-MAX", _S, "0.0481125", _edge_max(_S, "p=0,y=0", 1.0, 1),
              "starlike edge p = 0, y = 0: M(0, x, 0) <= 0.0481125"),
        Claim("M-EDGE-P0Y1-MAX", _S, "1/9", _edge_max(_S, "p=0,y=1", 1.0, 1),
              "starlike edge p = 0, y = 1: M(0, x, 1) <= 1/9", tolerance=1e-9),
        Claim("N-EDGE-P0Y0-ARGMAX", _C, math.sqrt(0.6), _edge_max(_C, "p=0,y=0", 1.0, 0),
              "convex edge p = 0, y = 0: critical point x = sqrt(3/5)", tolerance=1e-6),
        Claim("N-EDGE-P0Y0-MAX", _C, "0.00430331", _edge_max(_C, "p=0,y=0", 1.0, 1),
              "convex edge p = 0, y = 0: N(0, x, 0) <= 0.00430331"),
        Claim("N-EDGE-P0Y1-MAX", _C, "1/144", _edge_max(_C, "p=0,y=1", 1.0, 1),
              "convex edge p = 0, y = 1: N(0, x, 1) <= 1/144", tolerance=1e-9),
        Claim("N-FACE-X1-MAX", _C, "0.0037037", _edge_max(_C, "x=1", 2.0, 1),
              "convex face x = 1: N(p, 1, y) <= 0.0037037"),
        Claim("CONV-EDGE-X0Y0-MAX", _C, "0", _edge_max(_C, "x=0,y=0", 2.0, 1),
              "convex edge x = 0, y = 0: stated maximum 0 of p^6/1327104", registered=True),
        Claim("S2-CRITICAL-ROOT", _S, "1.35596", _root(s2_critical_polynomial),
              "starlike face x = 0: root of the eliminated critical equation"),
        Claim("S2-YP-THRESHOLD", _S, "1.68218", _root(yp_threshold),
              "starlike face x = 0: y_p <= 1 requires p above 1.68218"),
        Claim("Y0-REGION-X", _S, "37/54", lambda cfg: stationary_region_x_limit(),
              "starlike interior: x-extent of the region where y0 lies in (0, 1)",
              registered=True),
        Claim("N-INTERIOR-STATIONARY", _C, "0",
              lambda cfg: interior_stationary_scan(_C, max(cfg.grid, 2)).hits,
              "convex interior: N has no critical point in the open cuboid"),
    ]


def reproduce_critical_constants(config: Optional[RunConfig] = None) -> List[ClaimRecord]:
    cfg = config or RunConfig.from_env()
    return [evaluate_claim(c, cfg) for c in critical_constant_claims()]
