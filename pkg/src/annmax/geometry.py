"""Planar points, metrics, and the 45-degree diagonal coordinate change.

All structures in this package are immutable after construction and safe to
share between threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class Metric(Enum):
    L1 = "l1"
    L2 = "l2"


@dataclass(frozen=True, slots=True)
class Point:
    """A planar point with a stable integer identity.

    Coordinates must be finite.  ``id`` indexes the point inside its owning
    set; ties throughout the package break toward the smaller id, which is
    what makes every query deterministic.
    """

    x: float
    y: float
    id: int = -1

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")


@dataclass(frozen=True, slots=True)
class RotatedPoint:
    """Diagonal coordinates u = x + y, v = x - y.

    L1 distance between two points equals the Chebyshev distance
    max(|du|, |dv|) between their rotations.  Lines of slope +1 and -1
    become axis-parallel in (u, v).
    """

    u: float
    v: float

    def to_xy(self) -> tuple[float, float]:
        return (self.u + self.v) / 2.0, (self.u - self.v) / 2.0


@dataclass(frozen=True, slots=True)
class CanonicalFrame:
    """The four axis and diagonal lines through a site, stored as offsets.

    l_plus is the slope +1 line (offset y - x), l_minus the slope -1 line
    (offset x + y), l_h the horizontal line (offset y), l_v the vertical
    line (offset x).
    """

    site: Point
    l_plus: float
    l_minus: float
    l_h: float
    l_v: float

    @classmethod
    def at(cls, site: Point) -> "CanonicalFrame":
        return cls(site, site.y - site.x, site.x + site.y, site.y, site.x)


def dist(p: Point, q: Point, m: Metric = Metric.L1) -> float:
    """Distance between two points under the chosen metric."""
    dx = p.x - q.x
    dy = p.y - q.y
    if m is Metric.L1:
        return abs(dx) + abs(dy)
    return math.hypot(dx, dy)


def sq_dist(p: Point, q: Point) -> float:
    """Squared Euclidean distance; exact on integer-valued coordinates."""
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def rotate45(p: Point) -> RotatedPoint:
    """Map a point to diagonal coordinates (x + y, x - y)."""
    return RotatedPoint(p.x + p.y, p.x - p.y)


def diag_sum(p: Point) -> float:
    return p.x + p.y


def diag_diff(p: Point) -> float:
    return p.x - p.y


def make_points(coords: Iterable[Sequence[float]]) -> list[Point]:
    """Build a point list with ids assigned from enumeration order."""
    return [Point(float(c[0]), float(c[1]), i) for i, c in enumerate(coords)]


# Shewchuk's stage-A error bound for the 2x2 orientation determinant.
_ORIENT_ERR = 3.3306690738754716e-16


def orient_sign(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Exact sign of the orientation determinant of (a, b, c).

    +1 for a counterclockwise turn, -1 for clockwise, 0 for collinear.
    A floating-point filter handles the common case; near-degenerate
    inputs fall back to exact rational arithmetic.
    """
    detl = (bx - ax) * (cy - ay)
    detr = (by - ay) * (cx - ax)
    det = detl - detr
    err = _ORIENT_ERR * (abs(detl) + abs(detr))
    if det > err:
        return 1
    if det < -err:
        return -1
    if err == 0.0:
        return 0
    from fractions import Fraction

    exact = (Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay)) - (
        Fraction(by) - Fraction(ay)
    ) * (Fraction(cx) - Fraction(ax))
    if exact > 0:
        return 1
    if exact < 0:
        return -1
    return 0

