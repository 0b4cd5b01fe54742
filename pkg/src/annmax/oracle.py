"""Brute-force reference implementations of every query in the package.

These evaluate the definitions literally and share the engines' tie rule
(smaller id) so that equality assertions against them are exact.
"""
from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .dragging import DIRECTION_SIGNS, DragQuery
from .geometry import Metric, Point
from .results import AggregateResult


def _g_array(P: Sequence[Point], Q: Sequence[Point], metric: Metric) -> np.ndarray:
    px = np.array([p.x for p in P])[:, None]
    py = np.array([p.y for p in P])[:, None]
    qx = np.array([q.x for q in Q])[None, :]
    qy = np.array([q.y for q in Q])[None, :]
    if metric is Metric.L1:
        d = np.abs(px - qx) + np.abs(py - qy)
    else:
        d = (px - qx) ** 2 + (py - qy) ** 2  # squared; exact on integer grids
    return d.max(axis=1)


def brute_query(P: Sequence[Point], Q: Sequence[Point], metric: Metric = Metric.L1) -> AggregateResult:
    """argmin over P of the max distance to Q, ties toward smaller id."""
    if not P or not Q:
        raise ValueError("empty input set")
    g = _g_array(P, Q, metric)
    ids = np.array([p.id for p in P])
    i = int(np.lexsort((ids, g))[0])
    val = float(g[i])
    return AggregateResult(P[i], math.sqrt(val) if metric is Metric.L2 else val)


def brute_top_k(P: Sequence[Point], Q: Sequence[Point], metric: Metric, k: int) -> list[AggregateResult]:
    """All points sorted by (aggregate value, id), truncated to min(k, n)."""
    if not P or not Q:
        raise ValueError("empty input set")
    g = _g_array(P, Q, metric)
    ids = np.array([p.id for p in P])
    order = np.lexsort((ids, g))[: max(0, min(k, len(P)))]
    if metric is Metric.L2:
        return [AggregateResult(P[i], math.sqrt(float(g[i]))) for i in order]
    return [AggregateResult(P[i], float(g[i])) for i in order]


def brute_drag(P: Sequence[Point], q: DragQuery) -> Optional[tuple[Point, float]]:
    """Linear scan over P implementing the dragging-query definition."""
    xlo, xhi, ylo, yhi = q.region()
    bound = q.lex_bound()
    sx, sy = q.signs()
    best = None
    for p in P:
        if not _side_ok(p.x, xlo, True) or not _side_ok(p.x, xhi, False):
            continue
        if not _side_ok(p.y, ylo, True) or not _side_ok(p.y, yhi, False):
            continue
        key = (sx * p.x + sy * p.y, p.id)
        if bound is not None and key <= bound:
            continue
        if best is None or key < best[0]:
            best = (key, p)
    if best is None:
        return None
    return best[1], best[0][0] - q.base_offset()


def _side_ok(val: float, bound, lower: bool) -> bool:
    if bound is None:
        return True
    bv, strict = bound
    if lower:
        return val > bv or (not strict and val == bv)
    return val < bv or (not strict and val == bv)


class DragScanOracle:
    """Vectorized form of brute_drag for bulk verification runs."""

    def __init__(self, P: Sequence[Point]):
        self.points = list(P)
        self.x = np.array([p.x for p in P])
        self.y = np.array([p.y for p in P])
        self.ids = np.array([p.id for p in P])

    def run(self, q: DragQuery) -> Optional[tuple[Point, float]]:
        xlo, xhi, ylo, yhi = q.region()
        mask = np.ones(len(self.points), dtype=bool)
        for val, bound, lower in ((self.x, xlo, True), (self.x, xhi, False), (self.y, ylo, True), (self.y, yhi, False)):
            if bound is None:
                continue
            bv, strict = bound
            if lower:
                mask &= (val > bv) if strict else (val >= bv)
            else:
                mask &= (val < bv) if strict else (val <= bv)
        sx, sy = q.signs()
        f = sx * self.x + sy * self.y
        bound = q.lex_bound()
        if bound is not None:
            bf, bid = bound
            mask &= (f > bf) | ((f == bf) & (self.ids > bid))
        if not mask.any():
            return None
        idx = np.flatnonzero(mask)
        sub = np.lexsort((self.ids[idx], f[idx]))[0]
        i = int(idx[sub])
        return self.points[i], float(f[i]) - q.base_offset()
