"""Query-side L1 geometry: diagonal extremes, bisectors, farthest cells.

For a query set Q only the (at most four) extreme points along the
diagonal directions matter for the max-aggregate under L1.  The farthest
cell of each surviving extreme decomposes, per quadrant of the owner,
into regions of the form

    axis-parallel quadrant/slab  intersected with  {f >= bound}

where f is one of the diagonal functionals x+y, x-y, -(x+y), -(x-y).
Those regions map directly onto segment-dragging queries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .dragging import DIRECTION_SIGNS, DragQuery, ooc_from_local, pt_from_local
from .geometry import Metric, Point, diag_diff, diag_sum, dist

Bound = tuple[float, bool]  # (value, strict)

_NEG_INF = float("-inf")

# Shape tags for farthest cells.
TYPE_A = "type-a"
TYPE_B = "type-b"
TYPE_C = "type-c"
HALF_PLANE = "half-plane"
WHOLE_PLANE = "whole-plane"

# Symmetry that maps an owner's configuration onto the southwest-extreme
# canonical frame, keyed by the owner's primary role.
_ORIENT_SIGNS = {
    "identity": (1, 1),
    "rot180": (-1, -1),
    "flip_y": (1, -1),
    "flip_x": (-1, 1),
}


@dataclass(frozen=True, slots=True)
class QueryExtremes:
    """The diagonal extreme points of a query set.

    q1 maximizes x+y (northeast), q2 maximizes y-x (northwest), q3
    minimizes x+y (southwest), q4 minimizes y-x (southeast).  ``distinct``
    holds the physically distinct survivors after redundancy removal,
    sorted by id.
    """

    q1: Point
    q2: Point
    q3: Point
    q4: Point
    distinct: tuple[Point, ...]


def compute_qmax(Q: Sequence[Point]) -> QueryExtremes:
    """Extreme points of Q along the four diagonal directions.

    Ties within one direction break toward the smaller id.  A survivor is
    dropped while the remaining ones are still extreme in all four
    directions; directions are processed northeast, northwest, southwest,
    southeast, repeating until stable.
    """
    if not Q:
        raise ValueError("empty query set")
    if len({p.id for p in Q}) != len(Q):
        Q = [Point(p.x, p.y, i) for i, p in enumerate(Q)]

    u = {p.id: diag_sum(p) for p in Q}
    v = {p.id: diag_diff(p) for p in Q}
    u_max = max(u.values())
    u_min = min(u.values())
    v_max = max(v.values())
    v_min = min(v.values())

    # Direction -> (functional value to attain).  q2 maximizes y-x, which
    # is minimal x-y; q4 is the opposite.
    targets = {"ne": ("u", u_max), "nw": ("v", v_min), "sw": ("u", u_min), "se": ("v", v_max)}

    def attains(p: Point, d: str) -> bool:
        kind, val = targets[d]
        return (u[p.id] == val) if kind == "u" else (v[p.id] == val)

    def pick(cands: Sequence[Point], d: str) -> Point:
        best = None
        for p in cands:
            if attains(p, d) and (best is None or p.id < best.id):
                best = p
        assert best is not None
        return best

    holder = {d: pick(Q, d) for d in ("ne", "nw", "sw", "se")}
    distinct = {holder[d].id: holder[d] for d in holder}

    changed = True
    while changed and len(distinct) > 1:
        changed = False
        for d in ("ne", "nw", "sw", "se"):
            cur = holder[d]
            if cur.id not in distinct:
                continue
            rest = [p for p in distinct.values() if p.id != cur.id]
            if not rest:
                continue
            if all(any(attains(p, dd) for p in rest) for dd in ("ne", "nw", "sw", "se")):
                del distinct[cur.id]
                for dd in ("ne", "nw", "sw", "se"):
                    if holder[dd].id == cur.id:
                        holder[dd] = pick(rest, dd)
                changed = True

    return QueryExtremes(
        q1=holder["ne"],
        q2=holder["nw"],
        q3=holder["sw"],
        q4=holder["se"],
        distinct=tuple(sorted(distinct.values(), key=lambda p: p.id)),
    )


def g_value(p: Point, e: QueryExtremes, m: Metric = Metric.L1) -> float:
    """Aggregate value of p: its maximum distance to the extremes."""
    return max(dist(p, q, m) for q in e.distinct)


# ---------------------------------------------------------------------------
# Bisectors


@dataclass(frozen=True, slots=True)
class Bisector:
    """The L1 bisector of two sites.

    ``middle`` is the slope +1 or -1 central segment (possibly a single
    point) and ``half_lines`` are the two bounding rays, each given as
    (origin, unit direction).  ``kind`` is ``v-bisector`` when the rays are
    vertical, ``h-bisector`` when horizontal, and ``line`` for axis-aligned
    sites where the bisector is a single perpendicular line.  For sites
    spanning a square the two equidistant quadrants are represented by
    their bounding half-lines only.
    """

    kind: str
    middle: tuple[tuple[float, float], tuple[float, float]]
    half_lines: tuple[tuple[tuple[float, float], tuple[float, float]], ...]
    slope: Optional[int]

    def sample_points(self, ts: Sequence[float] = (0.25, 0.75, 1.5, 3.25)) -> list[tuple[float, float]]:
        """Points on the middle segment and on both rays."""
        (ax, ay), (bx, by) = self.middle
        out = []
        for t in ts:
            f = t / (1.0 + max(ts))
            out.append((ax + (bx - ax) * f, ay + (by - ay) * f))
        for (ox, oy), (dx, dy) in self.half_lines:
            for t in ts:
                out.append((ox + dx * t, oy + dy * t))
        return out


def bisector(q: Point, q2: Point) -> Bisector:
    """The locus of points L1-equidistant to two distinct sites."""
    if q.x == q2.x and q.y == q2.y:
        raise ValueError("coincident sites")
    dx = q2.x - q.x
    dy = q2.y - q.y
    mx = (q.x + q2.x) / 2.0
    my = (q.y + q2.y) / 2.0

    if dx == 0.0:  # vertical pair: horizontal perpendicular line
        mid = ((mx, my), (mx, my))
        rays = (((mx, my), (-1.0, 0.0)), ((mx, my), (1.0, 0.0)))
        return Bisector("line", mid, rays, None)
    if dy == 0.0:  # horizontal pair: vertical perpendicular line
        mid = ((mx, my), (mx, my))
        rays = (((mx, my), (0.0, -1.0)), ((mx, my), (0.0, 1.0)))
        return Bisector("line", mid, rays, None)

    xlo, xhi = min(q.x, q2.x), max(q.x, q2.x)
    ylo, yhi = min(q.y, q2.y), max(q.y, q2.y)
    if dx * dy > 0:  # southwest/northeast corners: middle of slope -1
        umid = mx + my
        x1 = max(xlo, umid - yhi)
        x2 = min(xhi, umid - ylo)
        a = (x1, umid - x1)  # upper endpoint
        b = (x2, umid - x2)
        slope = -1
    else:  # northwest/southeast corners: middle of slope +1
        vmid = mx - my
        x1 = max(xlo, vmid + ylo)
        x2 = min(xhi, vmid + yhi)
        a = (x2, x2 - vmid)  # upper endpoint
        b = (x1, x1 - vmid)
        slope = 1

    if abs(dx) >= abs(dy):  # includes the square case, simplified
        kind = "v-bisector"
        rays = ((a, (0.0, 1.0)), (b, (0.0, -1.0)))
    else:
        kind = "h-bisector"
        left, right = (a, b) if a[0] <= b[0] else (b, a)
        rays = ((left, (-1.0, 0.0)), (right, (1.0, 0.0)))
    return Bisector(kind, (a, b), rays, slope)


# ---------------------------------------------------------------------------
# Farthest cells


@dataclass(frozen=True, slots=True)
class Tile:
    """One quadrant piece of a farthest cell.

    The region is the conjunction of the axis bounds with
    ``sx*x + sy*y >= fmin``; inside it the owner's distance equals that
    functional minus its value at the owner.
    """

    direction: str
    sx: int
    sy: int
    xlo: Optional[Bound]
    xhi: Optional[Bound]
    ylo: Optional[Bound]
    yhi: Optional[Bound]
    fmin: float

    def fval(self, x: float, y: float) -> float:
        return self.sx * x + self.sy * y

    def contains(self, x: float, y: float) -> bool:
        for bound, val, lower in (
            (self.xlo, x, True),
            (self.xhi, x, False),
            (self.ylo, y, True),
            (self.yhi, y, False),
        ):
            if bound is None:
                continue
            bv, strict = bound
            if lower:
                if val < bv or (strict and val == bv):
                    return False
            else:
                if val > bv or (strict and val == bv):
                    return False
        return self.fval(x, y) >= self.fmin

    def local_lo(self) -> tuple[Bound, Bound]:
        """Lower bounds (X, Y) in the tile's sign-local frame."""
        if self.sx > 0:
            bx = self.xlo
        else:
            bx = (-self.xhi[0], self.xhi[1])
        if self.sy > 0:
            by = self.ylo
        else:
            by = (-self.yhi[0], self.yhi[1])
        return bx, by


def _bmax(a: Bound, b: Bound) -> Bound:
    if a[0] > b[0]:
        return a
    if b[0] > a[0]:
        return b
    return (a[0], a[1] or b[1])


def _bmin(a: Bound, b: Bound) -> Bound:
    if a[0] < b[0]:
        return a
    if b[0] < a[0]:
        return b
    return (a[0], a[1] or b[1])


def build_tiles(owner: Point, others: Sequence[Point]) -> tuple[Tile, ...]:
    """Quadrant tiles of the owner's farthest cell.

    A tile in a quadrant direction exists only when the owner attains the
    corresponding diagonal extreme among the sites; its bounds come from
    maximizing the per-site constraints, which is what intersecting the
    pairwise farther-regions amounts to inside that quadrant.
    """
    xo, yo = owner.x, owner.y
    uo, vo = xo + yo, xo - yo
    if not others:
        quad = {
            "ne": ((xo, False), None, (yo, False), None),
            "se": ((xo, False), None, None, (yo, True)),
            "sw": (None, (xo, True), None, (yo, True)),
            "nw": (None, (xo, True), (yo, False), None),
        }
        return tuple(
            Tile(d, *DIRECTION_SIGNS[d], *bounds, _NEG_INF)
            for d, bounds in quad.items()
        )

    us = [s.x + s.y for s in others]
    vs = [s.x - s.y for s in others]
    tiles = []

    if min(us) >= uo:  # owner attains the southwest extreme
        xlo = _bmax((xo, False), ((uo + max(vs)) / 2.0, False))
        ylo = _bmax((yo, False), ((uo - min(vs)) / 2.0, False))
        fmin = max((uo + u) / 2.0 for u in us)
        tiles.append(Tile("ne", 1, 1, xlo, None, ylo, None, fmin))
    if min(vs) >= vo:  # owner attains the northwest extreme
        xlo = _bmax((xo, False), ((vo + max(us)) / 2.0, False))
        yhi = _bmin((yo, True), ((min(us) - vo) / 2.0, False))
        fmin = max((vo + v) / 2.0 for v in vs)
        tiles.append(Tile("se", 1, -1, xlo, None, None, yhi, fmin))
    if max(us) <= uo:  # owner attains the northeast extreme
        xhi = _bmin((xo, True), ((uo + min(vs)) / 2.0, False))
        yhi = _bmin((yo, True), ((uo - max(vs)) / 2.0, False))
        fmin = max(-(uo + u) / 2.0 for u in us)
        tiles.append(Tile("sw", -1, -1, None, xhi, None, yhi, fmin))
    if max(vs) <= vo:  # owner attains the southeast extreme
        xhi = _bmin((xo, True), ((vo + min(us)) / 2.0, False))
        ylo = _bmax((yo, False), ((max(us) - vo) / 2.0, False))
        fmin = max(-(vo + v) / 2.0 for v in vs)
        tiles.append(Tile("nw", -1, 1, None, xhi, ylo, None, fmin))
    return tuple(tiles)


@dataclass(frozen=True, slots=True)
class L1Cell:
    """A farthest cell of one surviving extreme.

    ``shape`` classifies the boundary; ``v1``/``v2`` are the upper and
    lower endpoints of its middle segment (equal when degenerate).
    ``orientation`` names the symmetry mapping the cell onto the canonical
    southwest configuration; ``diag_flip`` marks the additional x/y swap
    needed when the configuration is the mirrored sub-case.
    """

    owner: Point
    shape: str
    v1: Optional[Point]
    v2: Optional[Point]
    orientation: str
    diag_flip: bool
    tiles: tuple[Tile, ...]
    others: tuple[Point, ...]

    def contains(self, x: float, y: float) -> bool:
        """Closed membership: the owner is farthest among the extremes."""
        d0 = abs(x - self.owner.x) + abs(y - self.owner.y)
        return all(d0 >= abs(x - s.x) + abs(y - s.y) for s in self.others)

    def claims(self, x: float, y: float) -> bool:
        """Half-open membership through the quadrant tiles."""
        return any(t.contains(x, y) for t in self.tiles)

    def boundary_points(self) -> list[tuple[float, float]]:
        """Sample points on the boundary polyline described by the shape."""
        if self.shape == WHOLE_PLANE:
            return []
        sx, sy = _ORIENT_SIGNS[self.orientation]

        def to_canon(p: Point) -> tuple[float, float]:
            x, y = sx * p.x, sy * p.y
            return (y, x) if self.diag_flip else (x, y)

        def to_world(c: tuple[float, float]) -> tuple[float, float]:
            x, y = (c[1], c[0]) if self.diag_flip else c
            return (sx * x, sy * y)

        a = to_canon(self.v1)
        b = to_canon(self.v2)
        if a[1] < b[1]:
            a, b = b, a
        ts = (0.25, 0.75, 1.5, 3.25, 6.5)
        pieces: list[tuple[tuple[float, float], tuple[float, float], Optional[float]]] = []
        pieces.append((a, (0.0, 1.0), None))  # upper ray
        if a != b:
            pieces.append((a, (b[0] - a[0], b[1] - a[1]), 1.0))  # middle segment
        if self.shape in (TYPE_A, TYPE_C):
            pieces.append((b, (0.0, -1.0), None))
        elif self.shape == TYPE_B:
            pieces.append((b, (1.0, 0.0), None))
        elif self.shape == HALF_PLANE:
            pieces.append((b, (0.0, -1.0), None))
        out = []
        for (ox, oy), (dx, dy), limit in pieces:
            for t in ts:
                f = t if limit is None else t / (1.0 + max(ts))
                out.append(to_world((ox + dx * f, oy + dy * f)))
        return out


def _map_tile(t: Tile, sx: int, sy: int) -> Tile:
    """Apply a sign symmetry to a tile (canonical-frame view)."""
    xlo, xhi = (t.xlo, t.xhi) if sx == 1 else (
        None if t.xhi is None else (-t.xhi[0], t.xhi[1]),
        None if t.xlo is None else (-t.xlo[0], t.xlo[1]),
    )
    ylo, yhi = (t.ylo, t.yhi) if sy == 1 else (
        None if t.yhi is None else (-t.yhi[0], t.yhi[1]),
        None if t.ylo is None else (-t.ylo[0], t.ylo[1]),
    )
    return Tile("??", t.sx * sx, t.sy * sy, xlo, xhi, ylo, yhi, t.fmin)


def _swap_tile(t: Tile) -> Tile:
    return Tile("??", t.sy, t.sx, t.ylo, t.yhi, t.xlo, t.xhi, t.fmin)


def _dir_of(t: Tile) -> str:
    for d, (sx, sy) in DIRECTION_SIGNS.items():
        if (sx, sy) == (t.sx, t.sy):
            return d
    raise AssertionError


def _classify(owner: Point, e: QueryExtremes, tiles: tuple[Tile, ...]):
    if not tiles or all(t.fmin == _NEG_INF for t in tiles):
        return WHOLE_PLANE, None, None, "identity", False

    if e.q3.id == owner.id:
        orientation = "identity"
    elif e.q1.id == owner.id:
        orientation = "rot180"
    elif e.q2.id == owner.id:
        orientation = "flip_y"
    else:
        orientation = "flip_x"
    sx, sy = _ORIENT_SIGNS[orientation]

    canon = {}
    for t in tiles:
        mt = _map_tile(t, sx, sy)
        canon[_dir_of(mt)] = mt
    assert "ne" in canon, "owner must attain the canonical minimum"

    diag = "se" not in canon and "nw" in canon
    if diag:
        canon = {_dir_of(st): st for st in (_swap_tile(t) for t in canon.values())}

    cx, cy = (sx * owner.x, sy * owner.y)
    if diag:
        cx, cy = cy, cx

    ne = canon["ne"]
    (Xne, _), (Yne, _) = ne.local_lo()
    U = ne.fmin
    if "se" in canon:
        se = canon["se"]
        Xse = se.xlo[0]
        Yse = se.yhi[0]
        V = se.fmin
        ne_bind = U > Xne + Yne
        se_bind = V > Xse - Yse
        if ne_bind:
            shape = TYPE_A
            v1c = (Xne, U - Xne)
            v2c = (Xse, Yse)
        elif se_bind:
            shape = TYPE_C
            v1c = (V + Yse, Yse)
            v2c = (Xse, Xse - V)
        else:
            shape = HALF_PLANE
            v1c = v2c = (Xne, cy)
    else:
        shape = TYPE_B
        if U > Xne + Yne:
            v1c = (Xne, U - Xne)
            v2c = (U - Yne, Yne)
        else:
            v1c = v2c = (Xne, Yne)

    def back(c: tuple[float, float]) -> Point:
        x, y = (c[1], c[0]) if diag else c
        return Point(sx * x, sy * y)

    v1, v2 = back(v1c), back(v2c)
    if v1.y < v2.y:
        v1, v2 = v2, v1
    return shape, v1, v2, orientation, diag


def build_cells(e: QueryExtremes) -> list[L1Cell]:
    """One farthest cell per surviving extreme."""
    cells = []
    for owner in e.distinct:
        others = tuple(s for s in e.distinct if s.id != owner.id)
        tiles = build_tiles(owner, others)
        shape, v1, v2, orientation, diag = _classify(owner, e, tiles)
        cells.append(L1Cell(owner, shape, v1, v2, orientation, diag, tiles, others))
    return cells


def decompose_cell(c: L1Cell) -> list[DragQuery]:
    """Dragging subqueries whose regions tile the cell.

    Each quadrant tile becomes an out-of-corner query, preceded by a
    parallel-track query when the diagonal bound cuts the quadrant corner
    (the middle-segment side of the boundary).
    """
    queries: list[DragQuery] = []
    single = len(c.tiles) == 1
    for t in sorted(c.tiles, key=lambda t: ("ne", "se", "sw", "nw").index(t.direction)):
        (Xv, xs), (Yv, ys) = t.local_lo()
        corner_f = Xv + Yv
        d = t.direction
        if t.fmin > corner_f:
            ysplit = t.fmin - Xv
            queries.append(_ooc(d, (Xv, xs), (ysplit, False)))
            queries.append(_pt(d, (Yv, ys), (ysplit, True), start=t.fmin))
        elif single:
            # Degenerate middle segment: keep the track query on the
            # closed bottom edge so the pair still covers the quadrant.
            queries.append(_ooc(d, (Xv, xs), (Yv, True)))
            queries.append(_pt(d, (Yv, ys), (Yv, ys), start=corner_f))
        else:
            queries.append(_ooc(d, (Xv, xs), (Yv, ys)))
    return queries


def _ooc(direction: str, xb: Bound, yb: Bound) -> DragQuery:
    return ooc_from_local(direction, xb, yb)


def _pt(direction: str, lo: Bound, hi: Bound, start: float) -> DragQuery:
    return pt_from_local(direction, "y", lo, hi, start=start)
