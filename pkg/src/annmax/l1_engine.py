"""Exact L1 max-aggregate queries and top-k enumeration.

A query reduces to at most four farthest cells; inside each cell the
nearest point to the owner is found by a constant number of dragging
queries, and the best cell candidate is the answer.  Top-k runs one lazy
nearest-stream per cell and merges them, deduplicating points that sit on
shared cell boundaries.
"""
from __future__ import annotations

import heapq
from typing import Optional, Sequence

from .dragging import DragIndex, DragQuery, ooc_from_local, out_of_corner, parallel_track, pt_from_local
from .geometry import Metric, Point, dist
from .l1_diagram import L1Cell, build_cells, compute_qmax, decompose_cell, g_value
from .results import AggregateResult, QueryStats


def _run(idx: DragIndex, dq: DragQuery, stats: Optional[QueryStats]):
    if stats is not None:
        stats.drag_queries += 1
    if dq.kind == "parallel_track":
        return parallel_track(idx, dq)
    return out_of_corner(idx, dq)


def query(idx: DragIndex, Q: Sequence[Point], stats: Optional[QueryStats] = None) -> AggregateResult:
    """The point of P whose maximum L1 distance to Q is smallest.

    Ties break toward the smaller point id.  Cost: one pass over Q plus a
    constant number of dragging queries.
    """
    extremes = compute_qmax(Q)
    if stats is not None:
        stats.extreme_passes += 1
    best: Optional[tuple[float, int, Point]] = None
    for cell in build_cells(extremes):
        for dq in decompose_cell(cell):
            hit = _run(idx, dq, stats)
            if hit is None:
                continue
            p, _ = hit
            d = dist(p, cell.owner, Metric.L1)
            if best is None or (d, p.id) < best[:2]:
                best = (d, p.id, p)
    assert best is not None, "the cells cover the plane"
    return AggregateResult(best[2], g_value(best[2], extremes))


class CellStream:
    """Points of one farthest cell in nondecreasing distance to its owner.

    A heap holds one pending hit per live subregion.  Emitting a hit from
    a parallel-track region re-queries the same slab past the hit;
    emitting from an out-of-corner region splits the remainder into two
    slabs and one corner, all bounded past the hit, so at most three new
    candidates enter the heap per emission.
    """

    def __init__(self, idx: DragIndex, cell: L1Cell, cap: int, stats: Optional[QueryStats] = None):
        self.idx = idx
        self.owner = cell.owner
        self.cap = cap
        self.stats = stats
        self.emitted = 0
        self.heap: list[tuple[float, int, Point, DragQuery]] = []
        self.peak = 0
        for dq in decompose_cell(cell):
            self._push(dq)
        self.init_count = len(self.heap)

    def _push(self, dq: DragQuery) -> None:
        hit = _run(self.idx, dq, self.stats)
        if hit is None:
            return
        p, _ = hit
        heapq.heappush(self.heap, (dist(p, self.owner, Metric.L1), p.id, p, dq))
        self.peak = max(self.peak, len(self.heap))
        if self.stats is not None:
            self.stats.heap_peak = max(self.stats.heap_peak, len(self.heap))

    def _refill(self, dq: DragQuery, hit: Point) -> None:
        bound = (dq.fval(hit.x, hit.y), hit.id)
        if dq.kind == "parallel_track":
            self._push(
                pt_from_local(
                    dq.direction,
                    dq.track_axis,
                    *_local_slab(dq),
                    exclusive_bound=bound,
                )
            )
            return
        sx, sy = dq.signs()
        cx, cy = dq.corner
        fx, fy = dq.corner_strict
        CX, CY = sx * cx, sy * cy
        HX, HY = sx * hit.x, sy * hit.y
        self._push(pt_from_local(dq.direction, "x", (CX, fx), (HX, True), exclusive_bound=bound))
        self._push(pt_from_local(dq.direction, "y", (CY, fy), (HY, True), exclusive_bound=bound))
        self._push(ooc_from_local(dq.direction, (HX, False), (HY, False), exclusive_bound=bound))

    def next_point(self) -> Optional[tuple[float, int, Point]]:
        if not self.heap:
            return None
        d, pid, p, dq = heapq.heappop(self.heap)
        self.emitted += 1
        if self.emitted < self.cap:
            self._refill(dq, p)
        return d, pid, p


def _local_slab(dq: DragQuery):
    """Recover sign-local (lo, hi) slab bounds of a parallel-track query."""
    sx, sy = dq.signs()
    s = sx if dq.track_axis == "x" else sy
    lo, hi = dq.tracks
    slo, shi = dq.track_strict
    if s == 1:
        return (lo, slo), (hi, shi)
    return (-hi, shi), (-lo, slo)


def top_k(idx: DragIndex, Q: Sequence[Point], k: int, stats: Optional[QueryStats] = None) -> list[AggregateResult]:
    """The k points of P with smallest max L1 distance to Q, ascending.

    Sorted by (aggregate value, id); returns all points when k exceeds
    the set size.
    """
    if k < 1:
        raise ValueError("k must be positive")
    extremes = compute_qmax(Q)
    if stats is not None:
        stats.extreme_passes += 1
    streams = [CellStream(idx, cell, k, stats) for cell in build_cells(extremes)]
    heads: list[tuple[float, int, int, Point]] = []
    for si, s in enumerate(streams):
        nxt = s.next_point()
        if nxt is not None:
            heads.append((nxt[0], nxt[1], si, nxt[2]))
    heapq.heapify(heads)

    out: list[AggregateResult] = []
    seen: set[int] = set()
    while heads and len(out) < k:
        d, pid, si, p = heapq.heappop(heads)
        if pid not in seen:
            seen.add(pid)
            out.append(AggregateResult(p, d))
        nxt = streams[si].next_point()
        if nxt is not None:
            heapq.heappush(heads, (nxt[0], nxt[1], si, nxt[2]))
    return out
