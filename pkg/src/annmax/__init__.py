"""Exact max-aggregate nearest neighbor search over planar point sets.

Preprocess a static point set P so that for any query set Q the point of
P minimizing the maximum distance to Q is found in sublinear time, under
both the L1 and the Euclidean metric, plus L1 top-k enumeration.
"""
from .dragging import (
    DragIndex,
    DragQuery,
    build_drag_index,
    out_of_corner,
    parallel_track,
)
from .geometry import CanonicalFrame, Metric, Point, RotatedPoint, dist, make_points, rotate45
from .l1_diagram import (
    Bisector,
    L1Cell,
    QueryExtremes,
    bisector,
    build_cells,
    compute_qmax,
    decompose_cell,
    g_value,
)
from .l1_engine import CellStream, query, top_k
from .l2_diagram import (
    FarthestCell,
    FarthestDiagram,
    TriangulatedCell,
    convex_hull,
    farthest_vd,
    triangulate_cell,
)
from .l2_engine import PartitionTree, build_partition_tree, f_triangle, l2_query
from .oracle import brute_drag, brute_query, brute_top_k
from .results import AggregateResult, QueryStats

__all__ = [
    "AggregateResult",
    "Bisector",
    "CanonicalFrame",
    "CellStream",
    "DragIndex",
    "DragQuery",
    "FarthestCell",
    "FarthestDiagram",
    "L1Cell",
    "Metric",
    "PartitionTree",
    "Point",
    "QueryExtremes",
    "QueryStats",
    "RotatedPoint",
    "TriangulatedCell",
    "bisector",
    "brute_drag",
    "brute_query",
    "brute_top_k",
    "build_cells",
    "build_drag_index",
    "build_partition_tree",
    "compute_qmax",
    "convex_hull",
    "decompose_cell",
    "dist",
    "f_triangle",
    "farthest_vd",
    "g_value",
    "l2_query",
    "make_points",
    "out_of_corner",
    "parallel_track",
    "query",
    "rotate45",
    "top_k",
    "triangulate_cell",
]
