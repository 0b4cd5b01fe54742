"""Euclidean max-aggregate queries via a nearest-neighbor-augmented
partition tree.

The tree splits the point set recursively into about sqrt(n) classes of
near-equal size with axis-parallel bounding rectangles; every node also
carries an exact nearest-neighbor structure over its subset.  A
triangle-restricted nearest-neighbor query walks the tree, answering
contained nodes through their NN structures and recursing only into
nodes whose rectangle crosses the triangle boundary, which keeps the
visited-node count sublinear.
"""
from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .geometry import Point, orient_sign
from .l2_diagram import convex_hull, farthest_vd, triangulate_cell
from .results import AggregateResult, QueryStats

_LEAF_SIZE = 8

Tri = tuple[tuple[float, float], tuple[float, float], tuple[float, float]]


class PartitionNode:
    """One node of the partition tree.

    ``indices`` are positions into the global point arrays; ``rect`` is
    the tight bounding rectangle of the subset; internal nodes carry a
    kd-tree over their subset for nearest-neighbor answers and children
    of near-equal cardinality (max class < 2 * min class).
    """

    __slots__ = ("indices", "rect", "children", "nn", "size")

    def __init__(self, indices: np.ndarray, rect, children, nn):
        self.indices = indices
        self.rect = rect
        self.children = children
        self.nn = nn
        self.size = len(indices)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(c.depth() for c in self.children)


class PartitionTree:
    """Static search structure over a planar point set."""

    def __init__(self, P: Sequence[Point], leaf_size: int = _LEAF_SIZE):
        if not P:
            raise ValueError("empty point set")
        self.points = tuple(P)
        self.x = np.array([p.x for p in P], dtype=np.float64)
        self.y = np.array([p.y for p in P], dtype=np.float64)
        self.ids = np.array([p.id for p in P], dtype=np.int64)
        self.leaf_size = leaf_size
        self.root = self._build(np.arange(len(P)))

    def _build(self, idx: np.ndarray) -> PartitionNode:
        xs, ys = self.x[idx], self.y[idx]
        rect = (xs.min(), xs.max(), ys.min(), ys.max())
        m = len(idx)
        if m <= self.leaf_size:
            return PartitionNode(idx, rect, (), None)
        r = max(2, int(round(math.sqrt(m))))
        targets = [m * (i + 1) // r - m * i // r for i in range(r)]
        parts = self._split(idx, targets)
        children = tuple(self._build(part) for part in parts)
        nn = cKDTree(np.column_stack((xs, ys)))
        return PartitionNode(idx, rect, children, nn)

    def _split(self, idx: np.ndarray, targets: list[int]) -> list[np.ndarray]:
        if len(targets) == 1:
            return [idx]
        half = len(targets) // 2
        nleft = sum(targets[:half])
        xs, ys = self.x[idx], self.y[idx]
        coord = xs if (xs.max() - xs.min()) >= (ys.max() - ys.min()) else ys
        order = np.lexsort((self.ids[idx], coord))
        return self._split(idx[order[:nleft]], targets[:half]) + self._split(
            idx[order[nleft:]], targets[half:]
        )

    def node_nearest(self, node: PartitionNode, qx: float, qy: float) -> tuple[float, int, int]:
        """Exact nearest point of the node's subset: (sqdist, id, index)."""
        if node.nn is not None:
            d, _ = node.nn.query((qx, qy))
            cand = node.nn.query_ball_point((qx, qy), d * (1.0 + 1e-9))
            pool = node.indices[cand] if cand else node.indices
        else:
            pool = node.indices
        best = None
        for i in pool:
            dx = self.x[i] - qx
            dy = self.y[i] - qy
            key = (dx * dx + dy * dy, int(self.ids[i]), int(i))
            if best is None or key < best:
                best = key
        return best


def build_partition_tree(P: Sequence[Point], leaf_size: int = _LEAF_SIZE) -> PartitionTree:
    """Build the search tree; near-linear time, O(n log log n) extra space."""
    return PartitionTree(P, leaf_size)


def _tri_normalize(tri) -> Tri:
    t = tuple((float(p[0]), float(p[1])) if not isinstance(p, Point) else (p.x, p.y) for p in tri)
    if len(t) != 3:
        raise ValueError("triangle must have three vertices")
    s = orient_sign(t[0][0], t[0][1], t[1][0], t[1][1], t[2][0], t[2][1])
    if s == 0:
        raise ValueError("degenerate triangle")
    return t if s > 0 else (t[0], t[2], t[1])


def _point_in_tri(x: float, y: float, tri: Tri) -> bool:
    (ax, ay), (bx, by), (cx, cy) = tri
    return (
        orient_sign(ax, ay, bx, by, x, y) >= 0
        and orient_sign(bx, by, cx, cy, x, y) >= 0
        and orient_sign(cx, cy, ax, ay, x, y) >= 0
    )


def _rect_corners(rect):
    xmin, xmax, ymin, ymax = rect
    return ((xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax))


def _rect_inside_tri(rect, tri: Tri) -> bool:
    return all(_point_in_tri(cx, cy, tri) for cx, cy in _rect_corners(rect))

def _rect_outside_tri(rect, tri: Tri) -> bool:
    xmin, xmax, ymin, ymax = rect
    txmin = min(p[0] for p in tri)
    txmax = max(p[0] for p in tri)
    tymin = min(p[1] for p in tri)
    tymax = max(p[1] for p in tri)
    if txmax < xmin or txmin > xmax or tymax < ymin or tymin > ymax:
        return True
    corners = _rect_corners(rect)
    for i in range(3):
        ax, ay = tri[i]
        bx, by = tri[(i + 1) % 3]
        if all(orient_sign(ax, ay, bx, by, cx, cy) < 0 for cx, cy in corners):
            return True
    return False


def f_triangle(
    tree: PartitionTree, q, tri, stats: Optional[QueryStats] = None
) -> Optional[tuple[Point, float]]:
    """Nearest point of P inside a closed triangle to q, ties by id.

    Containment uses exact orientation predicates; nodes whose rectangle
    is contained in the triangle are answered through their NN structure,
    disjoint nodes are skipped, crossing nodes are recursed into.
    """
    t = _tri_normalize(tri)
    qx, qy = (q.x, q.y) if isinstance(q, Point) else (float(q[0]), float(q[1]))
    if stats is not None:
        stats.f_triangle_calls += 1
    best: Optional[tuple[float, int, int]] = None

    def visit(node: PartitionNode) -> None:
        nonlocal best
        if stats is not None:
            stats.nodes_visited += 1
        if _rect_outside_tri(node.rect, t):
            return
        if _rect_inside_tri(node.rect, t):
            key = tree.node_nearest(node, qx, qy)
            if best is None or key < best:
                best = key
            return
        if node.is_leaf:
            for i in node.indices:
                x, y = tree.x[i], tree.y[i]
                if _point_in_tri(x, y, t):
                    dx, dy = x - qx, y - qy
                    key = (dx * dx + dy * dy, int(tree.ids[i]), int(i))
                    if best is None or key < best:
                        best = key
            return
        for child in node.children:
            visit(child)

    visit(tree.root)
    if best is None:
        return None
    return tree.points[best[2]], math.sqrt(best[0])


def l2_query(tree: PartitionTree, Q: Sequence[Point], stats: Optional[QueryStats] = None) -> AggregateResult:
    """The point of P whose maximum Euclidean distance to Q is smallest.

    Builds the hull and farthest diagram of Q, clips each cell to a box
    containing P (expanded by one box diagonal), and searches every
    triangle of every cell.  Candidate values are re-derived as exact
    maxima over the hull so that clipped-boundary rounding cannot bias
    the comparison; ties break toward the smaller id.
    """
    if not Q:
        raise ValueError("empty query set")
    hull = convex_hull(Q)
    diagram = farthest_vd(hull)
    xmin, xmax = float(tree.x.min()), float(tree.x.max())
    ymin, ymax = float(tree.y.min()), float(tree.y.max())
    diag = math.hypot(xmax - xmin, ymax - ymin) + 1.0
    box = (math.floor(xmin - diag), math.ceil(xmax + diag), math.floor(ymin - diag), math.ceil(ymax + diag))
    # Wider than any float rounding of the clipped boundary, yet narrower
    # than the smallest separation an off-cell integer point can have from
    # a bisector, so clipped cells overlap on shared boundaries without
    # ever absorbing a foreign grid point.
    inflate = 5e-8

    candidates: dict[int, Point] = {}
    for cell in diagram.cells:
        for tri in triangulate_cell(cell, box, inflate).triangles:
            hit = f_triangle(tree, cell.owner, tri, stats)
            if hit is not None:
                candidates.setdefault(hit[0].id, hit[0])

    assert candidates, "clipped cells cover the data set"
    best = None
    for p in candidates.values():
        gsq = max((p.x - q.x) ** 2 + (p.y - q.y) ** 2 for q in hull)
        key = (gsq, p.id)
        if best is None or key < best[0]:
            best = (key, p)
    return AggregateResult(best[1], math.sqrt(best[0][0]))
