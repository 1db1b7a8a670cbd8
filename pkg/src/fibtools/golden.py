"""The golden ratio as a constant and in geometric constructions.

Everything here is binary64 floating point with explicit tolerances.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import PreconditionError

SQRT5 = math.sqrt(5.0)
PHI = (1.0 + SQRT5) / 2.0
PSI = (1.0 - SQRT5) / 2.0

GOLDEN_RECT_TOL = 1e-9
PYRAMID_TRIANGLE_TOL = 0.005


@dataclass(frozen=True)
class GoldenConstants:
    phi: float = PHI
    psi: float = PSI
    sqrt5: float = SQRT5
    binet_a1: float = 1.0 / SQRT5
    binet_a2: float = -1.0 / SQRT5
    phi_exact: str = "(1 + sqrt(5)) / 2"
    psi_exact: str = "(1 - sqrt(5)) / 2"
    binet_a1_exact: str = "1 / sqrt(5)"
    binet_a2_exact: str = "-1 / sqrt(5)"


def golden_constants() -> GoldenConstants:
    return GoldenConstants()


def convergent(k: int) -> Fraction:
    """k-th convergent of ``[1; 1, 1, ...]``, built from the continued-fraction recurrence.

    ``convergent(1) == 2/1``, ``convergent(4) == 8/5``.
    """
    if k < 1:
        raise PreconditionError(f"convergent index must be >= 1, got {k}")
    h_prev, h = 1, 1  # h_{-1}, h_0 with a_0 = 1
    k_prev, kk = 0, 1
    for _ in range(k):
        h_prev, h = h, h + h_prev
        k_prev, kk = kk, kk + k_prev
    return Fraction(h, kk)


def nested_radical(k: int) -> float:
    """``sqrt(1 + sqrt(1 + ...))`` with k square roots, seeded at 1."""
    if k < 1:
        raise PreconditionError(f"iteration count must be >= 1, got {k}")
    x = 1.0
    for _ in range(k):
        x = math.sqrt(1.0 + x)
    return x


def golden_section_point(a: float, b: float) -> float:
    """Point C on [a, b] with AB/AC == AC/CB == phi."""
    length = b - a
    if not length > 0:
        raise PreconditionError(f"degenerate segment [{a}, {b}]")
    return a + length / PHI


@dataclass(frozen=True)
class Rect:
    width: float
    height: float

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise PreconditionError("rectangle sides must be positive")

    def normalized(self) -> Rect:
        if self.width >= self.height:
            return self
        return Rect(self.height, self.width)

    @property
    def ratio(self) -> float:
        r = self.normalized()
        return r.width / r.height

    @property
    def area(self) -> float:
        return self.width * self.height


def rect_subdivide(r: Rect) -> tuple[Rect, Rect]:
    """Cut the largest square off a golden rectangle; the remainder is golden again."""
    r = r.normalized()
    if abs(r.ratio - PHI) > GOLDEN_RECT_TOL:
        raise PreconditionError(f"rectangle is not golden: width/height = {r.ratio!r}")
    square = Rect(r.height, r.height)
    rest = Rect(r.height, r.width - r.height)
    return square, rest


def golden_rectangle_trace(width: float, steps: int) -> list[tuple[float, float]]:
    """Corner points visited by repeatedly cutting squares from a golden rectangle.

    The rectangle ``[0, width] x [0, width/phi]`` is cut on the left, top,
    right, bottom in turn; each returned point is the outer corner of the cut
    square that the inscribed spiral passes through.
    """
    x0, y0, x1, y1 = 0.0, 0.0, width, width / PHI
    points = [(x0, y0)]
    for step in range(steps):
        w, h = x1 - x0, y1 - y0
        side = min(w, h)
        rect_subdivide(Rect(w, h))
        match step % 4:
            case 0:  # left square
                x0 += side
                points.append((x0, y1))
            case 1:  # top square
                y1 -= side
                points.append((x1, y1))
            case 2:  # right square
                x1 -= side
                points.append((x1, y0))
            case 3:  # bottom square
                y0 += side
                points.append((x0, y0))
    return points


@dataclass(frozen=True)
class SpiralParams:
    k: float
    c: float

    @property
    def tangent_angle_deg(self) -> float:
        # Angle between radius and tangent: tan(angle) = 1/c.
        return math.degrees(math.atan(1.0 / self.c))


def golden_spiral_params(k: float = 1.0) -> SpiralParams:
    """Equiangular spiral that grows by phi every quarter turn."""
    return SpiralParams(k=k, c=(2.0 / math.pi) * math.log(PHI))


def spiral_radius(p: SpiralParams, theta: float) -> float:
    if theta < 0:
        raise PreconditionError("theta must be >= 0")
    return p.k * math.exp(p.c * theta)


def deg_min(angle: float) -> str:
    """Render degrees to the nearest arc minute, e.g. ``38°10'``."""
    total = round(angle * 60)
    return f"{total // 60}°{total % 60:02d}'"


@dataclass(frozen=True)
class PyramidDims:
    height: float
    half_base: float
    apothem: float

    def __post_init__(self) -> None:
        if min(self.height, self.half_base, self.apothem) <= 0:
            raise PreconditionError("pyramid dimensions must be positive")
        legs = self.height**2 + self.half_base**2
        rel = abs(self.apothem**2 - legs) / legs
        if rel > PYRAMID_TRIANGLE_TOL:
            raise PreconditionError(
                f"not a right triangle: apothem^2 differs from legs by {rel:.2%}"
            )


# Unit construction: hypotenuse 1, short leg 1/phi, long leg sqrt(1/phi).
UNIT_PYRAMID = PyramidDims(height=math.sqrt(1.0 / PHI), half_base=1.0 / PHI, apothem=1.0)
KEOPS = PyramidDims(height=146.6088, half_base=115.1839, apothem=186.3852)


@dataclass(frozen=True)
class PyramidReport:
    half_base_ratio: float
    height_ratio: float
    self_ratio: float
    base_angle_deg: float
    apex_angle_deg: float
    base_angle_dm: str
    apex_angle_dm: str
    four_height: float
    four_height_vs_pi: float
    perimeter: float
    circumference: float
    perimeter_discrepancy: float

    def as_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in asdict(self).items())


def pyramid_metrics(d: PyramidDims = UNIT_PYRAMID) -> PyramidReport:
    """Golden-ratio checks on the meridian triangle of a pyramid.

    Lengths are normalized by the apothem (the hypotenuse).  ``self_ratio`` is
    ``half_base / height`` which reproduces ``height`` when the triangle is
    exactly golden (tan of the apex half-angle equals its cosine).
    """
    hb = d.half_base / d.apothem
    ht = d.height / d.apothem
    apex = math.degrees(math.atan2(hb, ht))
    base = 90.0 - apex
    perimeter = 8.0 * hb
    circumference = 2.0 * math.pi * ht
    return PyramidReport(
        half_base_ratio=hb,
        height_ratio=ht,
        self_ratio=hb / ht,
        base_angle_deg=base,
        apex_angle_deg=apex,
        base_angle_dm=deg_min(base),
        apex_angle_dm=deg_min(apex),
        four_height=4.0 * ht,
        four_height_vs_pi=4.0 * ht - math.pi,
        perimeter=perimeter,
        circumference=circumference,
        perimeter_discrepancy=(perimeter - circumference) / circumference,
    )
