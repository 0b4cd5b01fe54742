"""Seeded random instance generation for verification and benchmarks."""
from __future__ import annotations

import numpy as np

from .geometry import Point, make_points
from .l1_diagram import compute_qmax

DEFAULT_GRID = 10**6

# Small grids force heavy coordinate and distance ties.
MIXED_GRIDS = (DEFAULT_GRID, 1000, 32, 8)


def random_points(rng: np.random.Generator, n: int, grid: int = DEFAULT_GRID) -> list[Point]:
    """n points uniform on the integer grid [0, grid)^2; duplicates allowed."""
    coords = rng.integers(0, grid, size=(n, 2))
    return make_points(coords.tolist())


def random_instance(
    rng: np.random.Generator,
    n_max: int = 200,
    m_max: int = 50,
    grids: tuple[int, ...] = MIXED_GRIDS,
    with_k: bool = True,
):
    """A random (P, Q, k) instance on a randomly chosen grid size."""
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    grid = int(grids[rng.integers(0, len(grids))])
    P = random_points(rng, n, grid)
    Q = random_points(rng, m, grid)
    k = int(rng.integers(1, n + 1)) if with_k else 1
    return P, Q, k


def boundary_tie_instance(rng: np.random.Generator, grid: int = 40):
    """An instance with data points placed exactly on cell boundaries.

    Query coordinates are even so bisector middle lines hit integer
    coordinates; data points are seeded on those lines and duplicated to
    exercise id tie-breaking.
    """
    m = int(rng.integers(2, 7))
    Q = make_points((rng.integers(0, grid // 2, size=(m, 2)) * 2).tolist())
    extremes = compute_qmax(Q)
    coords: list[tuple[int, int]] = []
    span = 2 * grid
    sites = extremes.distinct
    for a in sites:
        for b in sites:
            if a.id >= b.id:
                continue
            umid = int(a.x + a.y + b.x + b.y) // 2
            vmid = int(a.x - a.y + b.x - b.y) // 2
            for _ in range(3):
                x = int(rng.integers(-span, span))
                coords.append((x, umid - x))
                y = int(rng.integers(-span, span))
                coords.append((vmid + y, y))
    extra = rng.integers(-span, span, size=(max(4, m), 2))
    coords.extend((int(a), int(b)) for a, b in extra.tolist())
    dup = coords[int(rng.integers(0, len(coords)))]
    coords.append(dup)
    P = make_points(coords)
    k = int(rng.integers(1, len(P) + 1))
    return P, Q, k
