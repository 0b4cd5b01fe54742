"""Segment-dragging queries over a static point set.

A dragging query asks for the first point hit by a slope +-1 segment
moving in one of the four diagonal directions, either between two
parallel axis-aligned tracks or out of an axis-aligned corner.  In every
case the answer minimizes one diagonal functional f in

    northeast: x + y      southeast: x - y
    southwest: -(x + y)   northwest: -(x - y)

over an axis-parallel region, with ties broken by point id.  The index
keeps, per direction, the points sorted by (f, id) under a segment tree
of bounding boxes; a query walks that tree in sorted order and returns
the first point inside its region past an optional exclusive (f, id)
bound.  Next-hit enumeration is therefore exact with no general-position
assumption: re-querying with the bound set to the previous hit yields
the successor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import Point

DIRECTION_SIGNS = {"ne": (1, 1), "se": (1, -1), "sw": (-1, -1), "nw": (-1, 1)}

Bound = tuple[float, bool]  # (value, strict)


@dataclass(frozen=True, slots=True)
class DragQuery:
    """One dragging query, in world coordinates.

    Parallel-track queries give two parallel tracks on ``track_axis``
    (values ``tracks``, per-track strictness flags) and drag the segment
    in ``direction`` starting at functional offset ``start`` (inclusive).
    Out-of-corner queries drag the segment out of ``corner`` into the
    quadrant opened by ``direction``; the per-side strictness flags allow
    half-open quadrants.  ``exclusive_bound`` is an open (f, id) lower
    bound on the dragged functional used for next-hit queries.
    """

    kind: str
    direction: str
    slope: int
    tracks: Optional[tuple[float, float]] = None
    track_axis: Optional[str] = None
    track_strict: tuple[bool, bool] = (False, False)
    corner: Optional[tuple[float, float]] = None
    corner_strict: tuple[bool, bool] = (False, False)
    start: Optional[float] = None
    exclusive_bound: Optional[tuple[float, int]] = None

    def signs(self) -> tuple[int, int]:
        return DIRECTION_SIGNS[self.direction]

    def fval(self, x: float, y: float) -> float:
        sx, sy = self.signs()
        return sx * x + sy * y

    def validate(self) -> None:
        if self.direction not in DIRECTION_SIGNS:
            raise ValueError(f"unknown drag direction {self.direction!r}")
        sx, sy = self.signs()
        want = -1 if sx == sy else 1
        if self.slope != want:
            raise ValueError(f"slope {self.slope} inconsistent with direction {self.direction!r}")
        if self.kind == "parallel_track":
            if self.track_axis not in ("x", "y"):
                raise ValueError("tracks must be axis-parallel ('x' or 'y')")
            if self.tracks is None:
                raise ValueError("parallel-track query without tracks")
            lo, hi = self.tracks
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise ValueError("tracks must be two parallel lines with lo <= hi")
        elif self.kind == "out_of_corner":
            if self.corner is None:
                raise ValueError("out-of-corner query without corner")
        else:
            raise ValueError(f"unknown query kind {self.kind!r}")

    def region(self):
        """Axis bounds (xlo, xhi, ylo, yhi) of the swept region."""
        self.validate()
        xlo = xhi = ylo = yhi = None
        if self.kind == "parallel_track":
            lo, hi = self.tracks
            b_lo = (lo, self.track_strict[0])
            b_hi = (hi, self.track_strict[1])
            if self.track_axis == "y":
                ylo, yhi = b_lo, b_hi
            else:
                xlo, xhi = b_lo, b_hi
        else:
            cx, cy = self.corner
            sx, sy = self.signs()
            if sx > 0:
                xlo = (cx, self.corner_strict[0])
            else:
                xhi = (cx, self.corner_strict[0])
            if sy > 0:
                ylo = (cy, self.corner_strict[1])
            else:
                yhi = (cy, self.corner_strict[1])
        return xlo, xhi, ylo, yhi

    def lex_bound(self) -> Optional[tuple[float, int]]:
        """Effective exclusive (f, id) lower bound."""
        cands = []
        if self.exclusive_bound is not None:
            cands.append((float(self.exclusive_bound[0]), int(self.exclusive_bound[1])))
        if self.kind == "parallel_track" and self.start is not None:
            cands.append((float(self.start), -1))
        if not cands:
            return None
        return max(cands)

    def base_offset(self) -> float:
        """Functional value the drag distance is measured from."""
        if self.kind == "out_of_corner":
            return self.fval(*self.corner)
        if self.start is not None:
            return float(self.start)
        if self.exclusive_bound is not None:
            return float(self.exclusive_bound[0])
        return 0.0


class _DirectionTree:
    """Points in (f, id) order with a bounding-box segment tree."""

    __slots__ = ("n", "size", "f", "ids", "x", "y", "src", "minx", "maxx", "miny", "maxy")

    def __init__(self, xs: np.ndarray, ys: np.ndarray, ids: np.ndarray, sx: int, sy: int):
        f = sx * xs + sy * ys
        order = np.lexsort((ids, f))
        self.n = len(xs)
        self.f = f[order]
        self.ids = ids[order]
        self.x = xs[order]
        self.y = ys[order]
        self.src = order
        size = 1
        while size < self.n:
            size <<= 1
        self.size = size
        inf = math.inf
        self.minx = np.full(2 * size, inf)
        self.maxx = np.full(2 * size, -inf)
        self.miny = np.full(2 * size, inf)
        self.maxy = np.full(2 * size, -inf)
        self.minx[size : size + self.n] = self.x
        self.maxx[size : size + self.n] = self.x
        self.miny[size : size + self.n] = self.y
        self.maxy[size : size + self.n] = self.y
        lo = size
        while lo > 1:
            half = lo >> 1
            for arr, op in (
                (self.minx, np.minimum),
                (self.maxx, np.maximum),
                (self.miny, np.minimum),
                (self.maxy, np.maximum),
            ):
                arr[half:lo] = op(arr[lo : 2 * lo : 2], arr[lo + 1 : 2 * lo : 2])
            lo = half

    def start_index(self, bound: Optional[tuple[float, int]]) -> int:
        if bound is None:
            return 0
        bf, bid = bound
        i = int(np.searchsorted(self.f, bf, side="left"))
        j = int(np.searchsorted(self.f, bf, side="right"))
        if i < j:
            i += int(np.searchsorted(self.ids[i:j], bid, side="right"))
        return i

    def first_in_region(self, xlo, xhi, ylo, yhi, start: int) -> int:
        """Index (in f-order) of the first point in the region, or -1."""
        if start >= self.n:
            return -1
        minx, maxx, miny, maxy = self.minx, self.maxx, self.miny, self.maxy
        size = self.size
        stack = [(1, 0, size)]
        while stack:
            node, lo, hi = stack.pop()
            if hi <= start or lo >= self.n:
                continue
            if xlo is not None and (maxx[node] < xlo[0] or (xlo[1] and maxx[node] == xlo[0])):
                continue
            if xhi is not None and (minx[node] > xhi[0] or (xhi[1] and minx[node] == xhi[0])):
                continue
            if ylo is not None and (maxy[node] < ylo[0] or (ylo[1] and maxy[node] == ylo[0])):
                continue
            if yhi is not None and (miny[node] > yhi[0] or (yhi[1] and miny[node] == yhi[0])):
                continue
            if node >= size:
                return node - size
            mid = (lo + hi) >> 1
            stack.append((2 * node + 1, mid, hi))
            stack.append((2 * node, lo, mid))
        return -1


class DragIndex:
    """Preprocessed dragging-query structures over a point set.

    Immutable after construction; concurrent queries are safe.  Size is
    linear in the point count and each direction is sorted exactly once.
    """

    def __init__(self, points: Sequence[Point]):
        if not points:
            raise ValueError("empty point set")
        ids = np.array([p.id for p in points], dtype=np.int64)
        if len(np.unique(ids)) != len(ids):
            raise ValueError("duplicate point ids")
        xs = np.array([p.x for p in points], dtype=np.float64)
        ys = np.array([p.y for p in points], dtype=np.float64)
        self.points = tuple(points)
        self.trees = {
            d: _DirectionTree(xs, ys, ids, sx, sy) for d, (sx, sy) in DIRECTION_SIGNS.items()
        }

    def __len__(self) -> int:
        return len(self.points)

    def run(self, q: DragQuery) -> Optional[tuple[Point, float]]:
        """Answer a dragging query: (point, drag distance) or None."""
        tree = self.trees[q.direction]
        xlo, xhi, ylo, yhi = q.region()
        start = tree.start_index(q.lex_bound())
        idx = tree.first_in_region(xlo, xhi, ylo, yhi, start)
        if idx < 0:
            return None
        p = self.points[tree.src[idx]]
        return p, float(tree.f[idx]) - q.base_offset()


def build_drag_index(P: Sequence[Point]) -> DragIndex:
    """Index P for dragging queries; O(n log n) build, linear size."""
    return DragIndex(P)


def pt_from_local(
    direction: str,
    local_axis: str,
    lo: Bound,
    hi: Bound,
    start: Optional[float] = None,
    exclusive_bound: Optional[tuple[float, int]] = None,
) -> DragQuery:
    """Parallel-track query from sign-local slab bounds.

    ``local_axis`` names the coordinate in the direction's local frame
    (where both signs are positive); bounds are lower/upper in that frame.
    """
    sx, sy = DIRECTION_SIGNS[direction]
    s = sx if local_axis == "x" else sy
    if s == 1:
        tracks, strict = (lo[0], hi[0]), (lo[1], hi[1])
    else:
        tracks, strict = (-hi[0], -lo[0]), (hi[1], lo[1])
    return DragQuery(
        kind="parallel_track",
        direction=direction,
        slope=-1 if sx == sy else 1,
        track_axis=local_axis,
        tracks=tracks,
        track_strict=strict,
        start=start,
        exclusive_bound=exclusive_bound,
    )


def ooc_from_local(
    direction: str,
    xb: Bound,
    yb: Bound,
    exclusive_bound: Optional[tuple[float, int]] = None,
) -> DragQuery:
    """Out-of-corner query from sign-local corner bounds."""
    sx, sy = DIRECTION_SIGNS[direction]
    return DragQuery(
        kind="out_of_corner",
        direction=direction,
        slope=-1 if sx == sy else 1,
        corner=(sx * xb[0], sy * yb[0]),
        corner_strict=(xb[1], yb[1]),
        exclusive_bound=exclusive_bound,
    )


def parallel_track(idx: DragIndex, q: DragQuery) -> Optional[tuple[Point, float]]:
    """First point swept by a segment dragged between two parallel tracks."""
    if q.kind != "parallel_track":
        raise ValueError("not a parallel-track query")
    return idx.run(q)


def out_of_corner(idx: DragIndex, q: DragQuery) -> Optional[tuple[Point, float]]:
    """First point swept by a segment dragged out of an axis-aligned corner."""
    if q.kind != "out_of_corner":
        raise ValueError("not an out-of-corner query")
    return idx.run(q)
