"""
Majorant surfaces M (starlike) and N (convex) over the cuboid [0,2]×[0,1]×[0,1],
the signed β/α decompositions of H3,1 they majorize, and the closed forms of
their restrictions to faces and edges.

Points are (p, x, y) = (p1, |γ|, |η|).  Every function here accepts Fractions
(exact values at rational points), floats, or numpy arrays (grid scans).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from caratheodory import SchwarzParams, _abs2, _conj
from classes import ClassTag

STARLIKE_SCALE: int = 331776
CONVEX_SCALE: int = 6635520
BOX_SLACK: float = 1e-12


class ObjectiveError(ValueError):
    """Raised for points outside the cuboid or unknown face names."""


@dataclass(frozen=True)
class CuboidPoint:
    p: Any
    x: Any
    y: Any

    def __post_init__(self) -> None:
        check_box(self.p, self.x, self.y)


def _in_range(value: Any, hi: Any) -> bool:
    if isinstance(value, np.ndarray):
        return bool(np.all((value >= -BOX_SLACK) & (value <= hi + BOX_SLACK)))
    return 0 <= value <= hi


def check_box(p: Any, x: Any, y: Any) -> None:
    if not (_in_range(p, 2) and _in_range(x, 1) and _in_range(y, 1)):
        raise ObjectiveError(f"({p}, {x}, {y}) is outside [0,2]×[0,1]×[0,1]")


def _scaled(value: Any, scale: int) -> Any:
    if isinstance(value, (int, Fraction)):
        return Fraction(value) / scale
    return value / scale


# ──────────────────────────────────────────────────────────────────────────────
# 1. Majorant surfaces
# ──────────────────────────────────────────────────────────────────────────────

def m_components(p: Any, x: Any) -> Tuple[Any, Any, Any, Any]:
    """m1..m4 with M = (m1 + m2·y + m3·y² + m4·(1 − y²))/331776."""
    q = 4 - p * p
    m1 = (13 * p ** 6 + 36 * x ** 2 * p ** 2 * q ** 2 + 360 * x ** 3 * p ** 2 * q ** 2
          + 72 * x ** 4 * p ** 2 * q ** 2 + 78 * x * p ** 4 * q + 120 * p ** 4 * x ** 2 * q
          + 324 * p ** 4 * x ** 3 * q + 1296 * x ** 2 * p ** 2 * q)
    m2 = 24 * (1 - x ** 2) * q * (17 * p ** 3 + 54 * x * p ** 3 + 30 * p * x * q
                                  + 12 * p * x ** 2 * q)
    m3 = 144 * (1 - x ** 2) * q * (16 * q + 2 * x ** 2 * q + 9 * p ** 2 * x)
    m4 = 1296 * (1 - x ** 2) * q * (2 * x * q + p ** 2)
    return m1, m2, m3, m4


def n_components(p: Any, x: Any) -> Tuple[Any, Any, Any, Any]:
    """n1..n4 with N = (n1 + n2·y + n3·y² + n4·(1 − y²))/6635520."""
    q = 4 - p * p
    n1 = (5 * p ** 6 + 180 * x ** 2 * p ** 2 * q ** 2 + 1536 * x ** 3 * q ** 2
          + 240 * x ** 3 * p ** 2 * q ** 2 + 144 * x ** 4 * p ** 2 * q ** 2
          + 12 * x * p ** 4 * q + 120 * p ** 4 * x ** 2 * q)
    n2 = (1 - x ** 2) * q * (240 * p ** 3 + 288 * p * x * q + 576 * p * x ** 2 * q)
    n3 = (1 - x ** 2) * q * (2880 * q + 576 * x ** 2 * q)
    n4 = 3456 * x * (1 - x ** 2) * q ** 2
    return n1, n2, n3, n4


def _surface(components: Tuple[Any, Any, Any, Any], y: Any) -> Any:
    c1, c2, c3, c4 = components
    return c1 + c2 * y + c3 * y ** 2 + c4 * (1 - y ** 2)


def M(p: Any, x: Any, y: Any, check: bool = True) -> Any:
    """Starlike majorant of |H3,1|."""
    if check:
        check_box(p, x, y)
    return _scaled(_surface(m_components(p, x), y), STARLIKE_SCALE)


def N(p: Any, x: Any, y: Any, check: bool = True) -> Any:
    """Convex majorant of |H3,1|."""
    if check:
        check_box(p, x, y)
    return _scaled(_surface(n_components(p, x), y), CONVEX_SCALE)


def majorant(cls: ClassTag, p: Any, x: Any, y: Any, check: bool = True) -> Any:
    return M(p, x, y, check) if cls is ClassTag.STARLIKE else N(p, x, y, check)


def majorant_at(cls: ClassTag, pt: CuboidPoint) -> Any:
    return majorant(cls, pt.p, pt.x, pt.y, check=False)


def majorant_dy(cls: ClassTag, p: Any, x: Any, y: Any) -> Any:
    """∂M/∂y or ∂N/∂y in the printed factored form."""
    q = 4 - p * p
    if cls is ClassTag.STARLIKE:
        inner = (24 * p * x * (5 + 2 * x) + p ** 3 * (17 + 24 * x - 12 * x ** 2)
                 + 96 * (8 - 9 * x + x ** 2) * y - 12 * p ** 2 * (25 - 27 * x + 2 * x ** 2) * y)
        return _scaled(q * (1 - x ** 2) * inner, 13824)
    inner = (24 * p * x * (1 + 2 * x) - p ** 3 * (-5 + 6 * x + 12 * x ** 2)
             + 96 * (5 - 6 * x + x ** 2) * y - 24 * p ** 2 * (5 - 6 * x + x ** 2) * y)
    return _scaled((1 - x ** 2) * q * inner, 138240)


# ──────────────────────────────────────────────────────────────────────────────
# 2. Signed decomposition of H3,1
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SignedDecomposition:
    """H3,1 = (c1 + c2·η + c3·η² + tail·ρ)/scale."""

    cls: ClassTag
    c1: Any
    c2: Any
    c3: Any
    tail: Any

    @property
    def scale(self) -> int:
        return STARLIKE_SCALE if self.cls is ClassTag.STARLIKE else CONVEX_SCALE


def signed_decomposition(cls: ClassTag, sp: SchwarzParams) -> SignedDecomposition:
    """β1..β3, φ (starlike) or α1..α3, ψ (convex) at (p1, γ, η)."""
    p, g, e = sp.p1, sp.gamma, sp.eta
    q = 4 - p * p
    g2, e2 = _abs2(g), _abs2(e)
    if cls is ClassTag.STARLIKE:
        c1 = (-13 * p ** 6 - 36 * p ** 2 * q ** 2 * g ** 2 - 360 * p ** 2 * q ** 2 * g ** 3
              + 72 * p ** 2 * q ** 2 * g ** 4 + 78 * p ** 4 * q * g + 120 * p ** 4 * q * g ** 2
              - 324 * p ** 4 * q * g ** 3 - 1296 * p ** 2 * q * g ** 2)
        c2 = 24 * (1 - g2) * q * (17 * p ** 3 + 54 * p ** 3 * g + 30 * p * q * g
                                  - 12 * p * q * g ** 2)
        c3 = 144 * (1 - g2) * q * (-16 * q - 2 * g2 * q + 9 * p ** 2 * _conj(g))
        tail = 1296 * (1 - g2) * q * (1 - e2) * (2 * q * g - p ** 2)
    else:
        c1 = (-5 * p ** 6 - 180 * p ** 2 * q ** 2 * g ** 2 + 1536 * q ** 2 * g ** 3
              - 240 * p ** 2 * q ** 2 * g ** 3 + 144 * p ** 2 * q ** 2 * g ** 4
              + 12 * p ** 4 * q * g - 120 * p ** 4 * q * g ** 2)
        c2 = (1 - g2) * q * (240 * p ** 3 - 288 * p * q * g - 576 * p * q * g ** 2)
        c3 = (1 - g2) * q * (-2880 * q - 576 * g2 * q)
        tail = 3456 * (1 - g2) * q ** 2 * (1 - e2) * g
    return SignedDecomposition(cls, c1, c2, c3, tail)


def reconstruct_h31(cls: ClassTag, sp: SchwarzParams) -> Any:
    d = signed_decomposition(cls, sp)
    total = d.c1 + d.c2 * sp.eta + d.c3 * sp.eta ** 2 + d.tail * sp.rho
    return _scaled(total, d.scale)


# ──────────────────────────────────────────────────────────────────────────────
# 3. Faces and edges
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FaceSpec:
    """A printed restriction: free variables, closed form, and its embedding."""

    name: str
    cls: ClassTag
    variables: Tuple[str, ...]
    printed: Callable[[Any, Any], Any]
    embed: Callable[[Any, Any], Tuple[Any, Any, Any]]


def _face(name: str, cls: ClassTag, variables: Tuple[str, ...],
          printed: Callable[[Any, Any], Any],
          embed: Callable[[Any, Any], Tuple[Any, Any, Any]]) -> FaceSpec:
    return FaceSpec(name, cls, variables, printed, embed)


def _s1(x: Any, y: Any) -> Any:
    return _scaled((1 - x ** 2) * (8 * y ** 2 + x ** 2 * y ** 2 + 9 * x * (1 - y ** 2)), 72)


def s2_as_read(p: Any, y: Any) -> Any:
    """x = 0 face with the unbalanced parenthesis closed at the very end."""
    q = 4 - p ** 2
    return _scaled(13 * p ** 6 + q * (408 * p ** 3 * y + 2304 * y ** 2 * q
                                      + 1296 * p ** 2 * (1 - y ** 2)), STARLIKE_SCALE)


def _s3(p: Any, _: Any = 0) -> Any:
    return _scaled(12672 * p ** 2 - 2952 * p ** 4 - 41 * p ** 6, STARLIKE_SCALE)


def _s4(p: Any, x: Any) -> Any:
    return _scaled(41472 * x * (1 - x ** 2)
                   + 576 * p ** 2 * (9 - 36 * x + x ** 2 + 46 * x ** 3 + 2 * x ** 4)
                   - 24 * p ** 4 * (54 - 121 * x - 8 * x ** 2 + 174 * x ** 3 + 24 * x ** 4)
                   + p ** 6 * (13 - 78 * x - 84 * x ** 2 + 36 * x ** 3 + 72 * x ** 4),
                   STARLIKE_SCALE)


def _s5(p: Any, x: Any) -> Any:
    return _scaled(2304 * p * x * (5 + 2 * x - 5 * x ** 2 - 2 * x ** 3)
                   - 4608 * (-8 + 7 * x ** 2 + x ** 4)
                   + 576 * p ** 2 * (-32 + 9 * x + 38 * x ** 2 + x ** 3 + 6 * x ** 4)
                   - 24 * p ** 5 * (17 + 24 * x - 29 * x ** 2 - 24 * x ** 3 + 12 * x ** 4)
                   + 96 * p ** 3 * (17 - 6 * x - 41 * x ** 2 + 6 * x ** 3 + 24 * x ** 4)
                   - 24 * p ** 4 * (-96 + 41 * x + 130 * x ** 2 + 12 * x ** 3 + 36 * x ** 4)
                   + p ** 6 * (13 - 78 * x - 84 * x ** 2 + 36 * x ** 3 + 72 * x ** 4),
                   STARLIKE_SCALE)


def _c1(x: Any, y: Any) -> Any:
    return _scaled(y ** 2 * (15 - 12 * x ** 2 - 3 * x ** 4) + 18 * x * (1 - y ** 2)
                   - 2 * x ** 3 * (5 - 9 * y ** 2), 2160)


def _c2(p: Any, y: Any) -> Any:
    return _scaled((p ** 3 + 96 * y - 24 * p ** 2 * y) ** 2, 1327104)


def _c3(p: Any, _: Any = 0) -> Any:
    return _scaled(24576 - 3264 * p ** 2 - 2448 * p ** 4 + 437 * p ** 6, CONVEX_SCALE)


def _c4(p: Any, x: Any) -> Any:
    return _scaled(6144 * x * (9 - 5 * x ** 2)
                   + 192 * p ** 2 * x * (-144 + 15 * x + 100 * x ** 2 + 12 * x ** 3)
                   - 48 * p ** 4 * x * (-73 + 20 * x + 80 * x ** 2 + 24 * x ** 3)
                   + p ** 6 * (5 - 12 * x + 60 * x ** 2 + 240 * x ** 3 + 144 * x ** 4),
                   CONVEX_SCALE)


def _c5(p: Any, x: Any) -> Any:
    q = 4 - p ** 2
    inner = (12 * p ** 4 * x + 120 * p ** 4 * x ** 2 + 180 * p ** 2 * q * x ** 2
             + 1536 * q * x ** 3 + 240 * p ** 2 * q * x ** 3 + 144 * p ** 2 * q * x ** 4
             + 3456 * q * x * (1 - x ** 2)
             + 48 * (1 - x ** 2) * (p ** 3 * (5 - 6 * x - 12 * x ** 2) + 24 * p * x * (1 + 2 * x)))
    return _scaled(5 * p ** 6 + q * inner, CONVEX_SCALE)


def _const(value: Fraction) -> Callable[[Any, Any], Any]:
    def face(a: Any, _: Any = 0) -> Any:
        if isinstance(a, np.ndarray):
            return np.full_like(a, float(value), dtype=float)
        return value if isinstance(a, (int, Fraction)) else float(value)
    return face


_S = ClassTag.STARLIKE
_C = ClassTag.CONVEX

FACES: Dict[Tuple[ClassTag, str], FaceSpec] = {}


def _register(face: FaceSpec) -> None:
    FACES[(face.cls, face.name)] = face


for _spec in (
    # starlike faces
    _face("p=0", _S, ("x", "y"), _s1, lambda x, y: (0, x, y)),
    _face("p=2", _S, ("x", "y"), _const(Fraction(13, 5184)), lambda x, y: (2, x, y)),
    _face("x=0", _S, ("p", "y"), s2_as_read, lambda p, y: (p, 0, y)),
    _face("x=1", _S, ("p",), _s3, lambda p, _=0: (p, 1, 0)),
    _face("y=0", _S, ("p", "x"), _s4, lambda p, x: (p, x, 0)),
    _face("y=1", _S, ("p", "x"), _s5, lambda p, x: (p, x, 1)),
    # starlike edges
    _face("x=0,y=0", _S, ("p",),
          lambda p, _=0: _scaled(5184 * p ** 2 - 1296 * p ** 4 + 13 * p ** 6, STARLIKE_SCALE),
          lambda p, _=0: (p, 0, 0)),
    _face("x=0,y=1", _S, ("p",),
          lambda p, _=0: _scaled(36864 - 18432 * p ** 2 + 1632 * p ** 3 + 2304 * p ** 4
                                 - 408 * p ** 5 + 13 * p ** 6, STARLIKE_SCALE),
          lambda p, _=0: (p, 0, 1)),
    _face("x=1,y=1", _S, ("p",), _s3, lambda p, _=0: (p, 1, 1)),
    _face("p=0,y=1", _S, ("x",), lambda x, _=0: _scaled(8 - 7 * x ** 2 - x ** 4, 72),
          lambda x, _=0: (0, x, 1)),
    _face("p=0,y=0", _S, ("x",), lambda x, _=0: _scaled(x * (1 - x ** 2), 8),
          lambda x, _=0: (0, x, 0)),
    _face("p=0,x=1", _S, ("y",), _const(Fraction(0)), lambda y, _=0: (0, 1, y)),
    # convex faces
    _face("p=0", _C, ("x", "y"), _c1, lambda x, y: (0, x, y)),
    _face("p=2", _C, ("x", "y"), _const(Fraction(1, 20736)), lambda x, y: (2, x, y)),
    _face("x=0", _C, ("p", "y"), _c2, lambda p, y: (p, 0, y)),
    _face("x=1", _C, ("p",), _c3, lambda p, _=0: (p, 1, 0)),
    _face("y=0", _C, ("p", "x"), _c4, lambda p, x: (p, x, 0)),
    _face("y=1", _C, ("p", "x"), _c5, lambda p, x: (p, x, 1)),
    # convex edges
    _face("x=0,y=0", _C, ("p",), lambda p, _=0: _scaled(p ** 6, 1327104),
          lambda p, _=0: (p, 0, 0)),
    _face("x=0,y=1", _C, ("p",), lambda p, _=0: _scaled((96 - 24 * p ** 2 + p ** 3) ** 2, 1327104),
          lambda p, _=0: (p, 0, 1)),
    _face("x=1,y=1", _C, ("p",), _c3, lambda p, _=0: (p, 1, 1)),
    _face("p=0,y=1", _C, ("x",),
          lambda x, _=0: _scaled(15 - 12 * x ** 2 + 8 * x ** 3 - 3 * x ** 4, 2160),
          lambda x, _=0: (0, x, 1)),
    _face("p=0,y=0", _C, ("x",), lambda x, _=0: _scaled(x * (9 - 5 * x ** 2), 1080),
          lambda x, _=0: (0, x, 0)),
    _face("p=0,x=1", _C, ("y",), _const(Fraction(1, 270)), lambda y, _=0: (0, 1, y)),
):
    _register(_spec)


# short report names for the faces (s*, c*) and edges (r*, t*)
FACE_ALIASES: Dict[Tuple[ClassTag, str], str] = {
    (_S, "s1"): "p=0", (_S, "s2"): "x=0", (_S, "s3"): "x=1", (_S, "s4"): "y=0",
    (_S, "s5"): "y=1", (_S, "r1"): "x=0,y=0", (_S, "r2"): "x=0,y=1", (_S, "r3"): "x=1,y=1",
    (_S, "r4"): "p=0,y=1", (_S, "r5"): "p=0,y=0",
    (_C, "c1"): "p=0", (_C, "c2"): "x=0", (_C, "c3"): "x=1", (_C, "c4"): "y=0",
    (_C, "c5"): "y=1", (_C, "t1"): "x=0,y=0", (_C, "t2"): "x=0,y=1", (_C, "t3"): "x=1,y=1",
    (_C, "t4"): "p=0,y=1", (_C, "t5"): "p=0,y=0",
}


def get_face(cls: ClassTag, face: str) -> FaceSpec:
    face = FACE_ALIASES.get((cls, face), face)
    try:
        return FACES[(cls, face)]
    except KeyError:
        known = ", ".join(name for c, name in FACES if c is cls)
        raise ObjectiveError(f"unknown {cls.value} face {face!r}; known: {known}") from None


def face_restriction(cls: ClassTag, face: str, a: Any, b: Any = 0) -> Any:
    """The printed closed form of the majorant on *face* at free coordinates (a, b)."""
    return get_face(cls, face).printed(a, b)


def face_gap(cls: ClassTag, face: str, a: Any, b: Any = 0) -> Any:
    """Printed face value minus the majorant evaluated on that face."""
    spec = get_face(cls, face)
    p, x, y = spec.embed(a, b)
    return spec.printed(a, b) - majorant(cls, p, x, y, check=False)


def c5_defect(p: Any, x: Any) -> Any:
    """N(p, x, 1) minus the printed y = 1 face."""
    q = 4 - p ** 2
    return _scaled(576 * q ** 2 * (1 - x ** 2) * (1 - x) * (5 - x), CONVEX_SCALE)


# ──────────────────────────────────────────────────────────────────────────────
# 4. Printed partial derivatives and critical-point equations
# ──────────────────────────────────────────────────────────────────────────────

def _ds1_dy(x: Any, y: Any) -> Any:
    return _scaled((1 - x ** 2) * (x - 1) * (x - 8) * y, 36)


def _ds2_dp(p: Any, y: Any) -> Any:
    return _scaled(6 * s2_p_equation(p, y), STARLIKE_SCALE)


def _ds4_dx(p: Any, x: Any) -> Any:
    return _scaled(-82944 * x ** 2 + 41472 * (1 - x ** 2)
                   + 576 * p ** 2 * (-36 + 2 * x + 138 * x ** 2 + 8 * x ** 3)
                   - 24 * p ** 4 * (-121 - 16 * x + 522 * x ** 2 + 96 * x ** 3)
                   + p ** 6 * (-78 - 168 * x + 108 * x ** 2 + 288 * x ** 3), STARLIKE_SCALE)


def _ds4_dp(p: Any, x: Any) -> Any:
    return _scaled(6 * p ** 5 * (13 - 78 * x - 84 * x ** 2 + 36 * x ** 3 + 72 * x ** 4)
                   - 96 * p ** 3 * (54 - 121 * x - 8 * x ** 2 + 174 * x ** 3 + 24 * x ** 4)
                   + 1152 * p * (9 - 36 * x + x ** 2 + 46 * x ** 3 + 2 * x ** 4), STARLIKE_SCALE)


def _dc1_dy(x: Any, y: Any) -> Any:
    return _scaled(y * (1 - x) ** 2 * (x + 1) * (5 - x), 360)


def _dc4_dx(p: Any, x: Any) -> Any:
    return _scaled(-61440 * x ** 2 - 6144 * (-9 + 5 * x ** 2)
                   + 192 * p ** 2 * x * (15 + 200 * x + 36 * x ** 2)
                   - 48 * p ** 4 * x * (20 + 160 * x + 72 * x ** 2)
                   + 192 * p ** 2 * (-144 + 15 * x + 100 * x ** 2 + 12 * x ** 3)
                   - 48 * p ** 4 * (-73 + 20 * x + 80 * x ** 2 + 24 * x ** 3)
                   + p ** 6 * (-12 + 120 * x + 720 * x ** 2 + 576 * x ** 3), CONVEX_SCALE)


def _dc4_dp(p: Any, x: Any) -> Any:
    return _scaled(384 * p * x * (-144 + 15 * x + 100 * x ** 2 + 12 * x ** 3)
                   - 192 * p ** 3 * x * (-73 + 20 * x + 80 * x ** 2 + 24 * x ** 3)
                   + 6 * p ** 5 * (5 - 12 * x + 60 * x ** 2 + 240 * x ** 3 + 144 * x ** 4),
                   CONVEX_SCALE)


FACE_PARTIALS: Dict[Tuple[ClassTag, str, str], Callable[[Any, Any], Any]] = {
    (_S, "p=0", "y"): _ds1_dy,
    (_S, "x=0", "p"): _ds2_dp,
    (_S, "y=0", "x"): _ds4_dx,
    (_S, "y=0", "p"): _ds4_dp,
    (_C, "p=0", "y"): _dc1_dy,
    (_C, "y=0", "x"): _dc4_dx,
    (_C, "y=0", "p"): _dc4_dp,
}


def face_partial(cls: ClassTag, face: str, variable: str, a: Any, b: Any = 0) -> Any:
    """Printed partial derivative of a face restriction."""
    face = FACE_ALIASES.get((cls, face), face)
    try:
        fn = FACE_PARTIALS[(cls, face, variable)]
    except KeyError:
        raise ObjectiveError(f"no printed ∂/∂{variable} for the {cls.value} face {face!r}") from None
    return fn(a, b)


def s2_p_equation(p: Any, y: Any) -> Any:
    """Printed left side of ∂s2/∂p = 0 (one sixth of 331776·∂s2/∂p)."""
    return (1728 * p - 864 * p ** 3 + 13 * p ** 5 + 816 * p ** 2 * y - 340 * p ** 4 * y
            - 7872 * p * y ** 2 + 2400 * p ** 3 * y ** 2)


def s2_critical_polynomial(p: Any) -> Any:
    """The x = 0 face equation after eliminating y through y_p."""
    return (21233664 * p - 27205632 * p ** 3 + 11472192 * p ** 5 - 1613016 * p ** 7
            + 2700 * p ** 9)


def r1_slope(p: Any) -> Any:
    """331776 × d/dp M(p, 0, 0)."""
    return 10368 * p - 5184 * p ** 3 + 78 * p ** 5


def r3_slope(p: Any) -> Any:
    """d/dp M(p, 1, ·) up to the positive factor 3/331776."""
    return 4224 * p - 1968 * p ** 3 - 41 * p ** 5


def yp_threshold(p: Any) -> Any:
    """Zero where the starlike x = 0 stationary y_p equals 1 (p > 8/5)."""
    return 17 * p ** 3 - 12 * (25 * p ** 2 - 64)


# ──────────────────────────────────────────────────────────────────────────────
# 5. Stationary points in y
# ──────────────────────────────────────────────────────────────────────────────

def stationary_y(cls: ClassTag, p: Any, x: Any) -> Optional[Any]:
    """Interior solution of ∂M/∂y = 0 (y0) or ∂N/∂y = 0 (y1); None when singular."""
    if cls is ClassTag.STARLIKE:
        num = p * (17 * p ** 2 + 120 * x + 24 * p ** 2 * x + 48 * x ** 2 - 12 * p ** 2 * x ** 2)
        den = 12 * (-64 + 25 * p ** 2 + 72 * x - 27 * p ** 2 * x - 8 * x ** 2 + 2 * p ** 2 * x ** 2)
    else:
        num = 5 * p ** 3 + 6 * p * x * (4 - p ** 2) * (1 + 2 * x)
        den = 24 * (4 - p ** 2) * (6 * x - x ** 2 - 5)
    if den == 0:
        return None
    return _ratio(num, den)


def stationary_y_grid(cls: ClassTag, p: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Vectorized stationary_y; NaN where the denominator vanishes."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if cls is ClassTag.STARLIKE:
            num = p * (17 * p ** 2 + 120 * x + 24 * p ** 2 * x + 48 * x ** 2 - 12 * p ** 2 * x ** 2)
            den = 12 * (-64 + 25 * p ** 2 + 72 * x - 27 * p ** 2 * x - 8 * x ** 2 + 2 * p ** 2 * x ** 2)
        else:
            num = 5 * p ** 3 + 6 * p * x * (4 - p ** 2) * (1 + 2 * x)
            den = 24 * (4 - p ** 2) * (6 * x - x ** 2 - 5)
        return np.where(den == 0, np.nan, num / np.where(den == 0, 1, den))


def face_stationary_y(cls: ClassTag, p: Any) -> Optional[Any]:
    """Critical y on the x = 0 face: 17p³/(12(25p² − 64)) or −p³/(24(4 − p²))."""
    if cls is ClassTag.STARLIKE:
        num, den = 17 * p ** 3, 12 * (25 * p ** 2 - 64)
    else:
        num, den = -p ** 3, 24 * (4 - p ** 2)
    if den == 0:
        return None
    return _ratio(num, den)


def _ratio(num: Any, den: Any) -> Any:
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        return Fraction(num) / Fraction(den)
    return num / den
