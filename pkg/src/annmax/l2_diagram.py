"""Euclidean query-side geometry: convex hull, farthest diagram, triangulation.

Only convex hull points of a query set can be farthest from anywhere, so
the farthest diagram is built over the hull.  Each cell is the
intersection of closed half-planes (one per other hull point) and is
convex and unbounded; for searching it is clipped to a box that contains
the data set and fan-triangulated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .geometry import Point, orient_sign, sq_dist

Box = tuple[float, float, float, float]  # xmin, xmax, ymin, ymax


def convex_hull(Q: Sequence[Point]) -> list[Point]:
    """Hull of Q in counterclockwise order, starting at the lexicographic
    smallest vertex; collinear interior points are excluded."""
    if not Q:
        raise ValueError("empty query set")
    unique: dict[tuple[float, float], Point] = {}
    for p in Q:
        key = (p.x, p.y)
        if key not in unique or p.id < unique[key].id:
            unique[key] = p
    pts = sorted(unique.values(), key=lambda p: (p.x, p.y, p.id))
    if len(pts) <= 2:
        return pts

    def chain(seq: Sequence[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient_sign(out[-2].x, out[-2].y, out[-1].x, out[-1].y, p.x, p.y) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points collinear: keep both endpoints
        hull = [pts[0], pts[-1]]
    return hull


@dataclass(frozen=True, slots=True)
class FarthestCell:
    """One cell of the farthest diagram: points where ``owner`` is the
    farthest hull point.  Stored as closed half-planes a*x + b*y >= c;
    the ordered boundary of the (unbounded) region is recovered by
    clipping against any enclosing box."""

    owner: Point
    halfplanes: tuple[tuple[float, float, float], ...]

    def contains(self, x: float, y: float) -> bool:
        return all(a * x + b * y >= c for a, b, c in self.halfplanes)

    def clip(self, box: Box, inflate: float = 0.0) -> list[tuple[float, float]]:
        """Clip to a box, optionally relaxing every half-plane by
        ``inflate`` in absolute distance (used to make neighboring clipped
        cells overlap rather than leave float-width cracks)."""
        xmin, xmax, ymin, ymax = box
        poly: list[tuple[float, float]] = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
        for a, b, c in self.halfplanes:
            if inflate:
                c = c - inflate * math.hypot(a, b)
            poly = _clip_halfplane(poly, a, b, c)
            if not poly:
                return []
        return _weld(poly)


@dataclass(frozen=True, slots=True)
class FarthestDiagram:
    hull: tuple[Point, ...]
    cells: tuple[FarthestCell, ...]

    def cell_of(self, owner_id: int) -> FarthestCell:
        for c in self.cells:
            if c.owner.id == owner_id:
                return c
        raise KeyError(owner_id)

    def farthest_owner(self, x: float, y: float) -> Point:
        """Farthest hull point from (x, y), ties toward the smaller id."""
        probe = Point(x, y)
        best = None
        for q in self.hull:
            key = (-sq_dist(probe, q), q.id)
            if best is None or key < best[0]:
                best = (key, q)
        return best[1]


def farthest_vd(hull: Sequence[Point]) -> FarthestDiagram:
    """Farthest diagram of hull points; only hull points own cells."""
    cells = []
    for q in hull:
        planes = []
        for s in hull:
            if s.id == q.id:
                continue
            # |p - q|^2 >= |p - s|^2  <=>  2(s - q) . p >= |s|^2 - |q|^2
            a = 2.0 * (s.x - q.x)
            b = 2.0 * (s.y - q.y)
            c = s.x * s.x + s.y * s.y - q.x * q.x - q.y * q.y
            planes.append((a, b, c))
        cells.append(FarthestCell(q, tuple(planes)))
    return FarthestDiagram(tuple(hull), tuple(cells))


@dataclass(frozen=True, slots=True)
class TriangulatedCell:
    owner: Point
    triangles: tuple[tuple[tuple[float, float], tuple[float, float], tuple[float, float]], ...]


def triangulate_cell(cell: FarthestCell, clip_box: Box, inflate: float = 0.0) -> TriangulatedCell:
    """Fan triangulation of the cell clipped to the box; empty when the
    clipped region is empty or degenerate."""
    poly = cell.clip(clip_box, inflate)
    if len(poly) < 3:
        return TriangulatedCell(cell.owner, ())
    scale = max(abs(v) for pt in poly for v in pt) + 1.0
    tris = []
    p0 = poly[0]
    for i in range(1, len(poly) - 1):
        p1, p2 = poly[i], poly[i + 1]
        area2 = abs((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]))
        if area2 > 1e-12 * scale * scale:
            tris.append((p0, p1, p2))
    return TriangulatedCell(cell.owner, tuple(tris))


def polygon_area(poly: Sequence[tuple[float, float]]) -> float:
    s = 0.0
    for i in range(len(poly)):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % len(poly)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2.0


def _clip_halfplane(poly, a: float, b: float, c: float):
    out = []
    n = len(poly)
    for i in range(n):
        p1 = poly[i]
        p2 = poly[(i + 1) % n]
        f1 = a * p1[0] + b * p1[1] - c
        f2 = a * p2[0] + b * p2[1] - c
        if f1 >= 0:
            out.append(p1)
            if f2 < 0:
                out.append(_intersect(p1, p2, f1, f2))
        elif f2 >= 0:
            out.append(_intersect(p1, p2, f1, f2))
    return out


def _intersect(p1, p2, f1: float, f2: float):
    t = f1 / (f1 - f2)
    return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


def _weld(poly, tol: float = 1e-12):
    if not poly:
        return poly
    scale = max(abs(v) for pt in poly for v in pt) + 1.0
    out = []
    for pt in poly:
        if out and abs(pt[0] - out[-1][0]) <= tol * scale and abs(pt[1] - out[-1][1]) <= tol * scale:
            continue
        out.append(pt)
    while len(out) > 1 and abs(out[0][0] - out[-1][0]) <= tol * scale and abs(out[0][1] - out[-1][1]) <= tol * scale:
        out.pop()
    return out
