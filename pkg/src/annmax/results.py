"""Result and instrumentation types shared by the query engines."""
from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import Point


@dataclass(frozen=True, slots=True)
class AggregateResult:
    """An answer point together with its aggregate (max) distance."""

    point: Point
    g: float


@dataclass(slots=True)
class QueryStats:
    """Operation counters filled in by the engines; wall-clock free."""

    extreme_passes: int = 0
    drag_queries: int = 0
    heap_peak: int = 0
    nodes_visited: int = 0
    f_triangle_calls: int = 0

    def reset(self) -> None:
        self.extreme_passes = 0
        self.drag_queries = 0
        self.heap_peak = 0
        self.nodes_visited = 0
        self.f_triangle_calls = 0
