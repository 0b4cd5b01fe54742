import numpy as np
import pytest

from annmax import Metric, Point, build_cells, compute_qmax, decompose_cell, dist, make_points
from annmax.l1_diagram import HALF_PLANE, TYPE_A, TYPE_B, TYPE_C, WHOLE_PLANE
from helpers import argmax_owner, query_region_contains


def _claimed_owner(cells, x, y):
    """Owner id under the tie rule: smallest id among claiming cells."""
    ids = [c.owner.id for c in cells if c.contains(x, y)]
    assert ids, (x, y)
    return min(ids)


def test_two_site_diagonal_pair():
    e = compute_qmax(make_points([(0, 0), (4, 4)]))
    cells = {c.owner.id: c for c in build_cells(e)}
    c0, c1 = cells[0], cells[1]
    assert c0.shape == TYPE_A
    assert (c0.v1.x, c0.v1.y) == (0, 4)
    assert (c0.v2.x, c0.v2.y) == (4, 0)
    # the half-plane side x + y >= 4 belongs to the cell of (0, 0)
    for x, y in [(5, 5), (4, 0), (0, 4), (2, 2), (10, -1)]:
        assert c0.contains(x, y)
    for x, y in [(0, 0), (1, 1), (-5, 2)]:
        assert not c0.contains(x, y) or x + y >= 4
    # complement goes to (4, 4), with ties on the bisector shared
    assert c1.contains(0, 0) and c1.contains(1, 2)
    assert c1.claims(-3, 1) and not c1.claims(5, 5)


def test_square_extremes_membership_matches_argmax_grid():
    Q = make_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    e = compute_qmax(Q)
    cells = build_cells(e)
    cell0 = next(c for c in cells if c.owner.id == 0)
    assert cell0.contains(10, 10)
    xs = np.linspace(-2, 3, 41)
    for x in xs:
        for y in xs:
            want = argmax_owner(e.distinct, x, y)
            assert _claimed_owner(cells, x, y) == want
            claiming = [c for c in cells if c.claims(x, y)]
            got = min(c.owner.id for c in claiming)
            assert got == want


@pytest.mark.parametrize("seed,grid", [(0, 8), (1, 20), (2, 1000)])
def test_random_extreme_sets_cover_and_argmax(seed, grid):
    rng = np.random.default_rng(seed)
    for _ in range(150):
        m = int(rng.integers(1, 9))
        Q = make_points(rng.integers(0, grid, size=(m, 2)).tolist())
        e = compute_qmax(Q)
        cells = build_cells(e)
        lo, hi = -grid // 2, grid + grid // 2 + 1
        samples = rng.integers(lo, hi, size=(40, 2)).tolist()
        for x, y in samples:
            want = argmax_owner(e.distinct, x, y)
            claiming = [c.owner.id for c in cells if c.claims(x, y)]
            assert claiming, "tiles must cover the plane"
            assert min(claiming) == want
            # per-cell tiles are disjoint
            for c in cells:
                assert sum(t.contains(x, y) for t in c.tiles) <= 1


def test_cell_shapes_are_from_the_catalog():
    rng = np.random.default_rng(5)
    seen = set()
    for _ in range(600):
        m = int(rng.integers(1, 7))
        grid = int(rng.choice([4, 12, 100]))
        Q = make_points(rng.integers(0, grid, size=(m, 2)).tolist())
        for c in build_cells(compute_qmax(Q)):
            assert c.shape in (TYPE_A, TYPE_B, TYPE_C, HALF_PLANE, WHOLE_PLANE)
            assert c.orientation in ("identity", "rot180", "flip_x", "flip_y")
            seen.add(c.shape)
            if c.shape != WHOLE_PLANE:
                assert c.v1.y >= c.v2.y
    assert {TYPE_A, TYPE_B, WHOLE_PLANE} <= seen


def test_boundary_reconstruction_consistency():
    rng = np.random.default_rng(6)
    checked = 0
    for _ in range(300):
        m = int(rng.integers(2, 7))
        Q = make_points((rng.integers(0, 30, size=(m, 2)) * 4).tolist())
        e = compute_qmax(Q)
        for c in build_cells(e):
            for x, y in c.boundary_points():
                d0 = dist(Point(x, y), c.owner, Metric.L1)
                others = [dist(Point(x, y), s, Metric.L1) for s in c.others]
                assert d0 >= max(others) - 1e-9 * max(1.0, d0)
                assert any(abs(d0 - d) <= 1e-9 * max(1.0, d0) for d in others)
                checked += 1
    assert checked >= 100


def test_singleton_whole_plane():
    e = compute_qmax(make_points([(3, 3)]))
    (cell,) = build_cells(e)
    assert cell.shape == WHOLE_PLANE
    for x, y in [(-100, 50), (3, 3), (1000, -1000)]:
        assert cell.contains(x, y) and cell.claims(x, y)


def test_decompose_type_b_degenerate_two_queries():
    e = compute_qmax(make_points([(0, 0), (1, 0), (0, 1), (1, 1)]))
    cell = next(c for c in build_cells(e) if c.owner.id == 0)
    assert cell.shape == TYPE_B and (cell.v1.x, cell.v1.y) == (cell.v2.x, cell.v2.y)
    qs = decompose_cell(cell)
    assert len(qs) == 2
    assert {q.kind for q in qs} == {"out_of_corner", "parallel_track"}
    ooc = next(q for q in qs if q.kind == "out_of_corner")
    assert ooc.corner == (cell.v1.x, cell.v1.y)


def test_decompose_type_a_three_queries_tile_the_cell():
    e = compute_qmax(make_points([(0, 0), (4, 4)]))
    cell = next(c for c in build_cells(e) if c.owner.id == 0)
    qs = decompose_cell(cell)
    kinds = sorted(q.kind for q in qs)
    assert kinds.count("out_of_corner") >= 2 and "parallel_track" in kinds
    rng = np.random.default_rng(7)
    for x, y in rng.integers(-6, 12, size=(400, 2)).tolist():
        inside = sum(query_region_contains(q, x, y) for q in qs)
        if cell.claims(x, y):
            assert inside == 1, (x, y)
        else:
            assert inside == 0, (x, y)


def test_decompose_whole_plane_covers_everything():
    e = compute_qmax(make_points([(2, 1)]))
    (cell,) = build_cells(e)
    qs = decompose_cell(cell)
    rng = np.random.default_rng(8)
    for x, y in rng.integers(-20, 20, size=(300, 2)).tolist():
        assert sum(query_region_contains(q, x, y) for q in qs) == 1


def test_tiles_stay_inside_the_closed_cell():
    rng = np.random.default_rng(9)
    for _ in range(200):
        m = int(rng.integers(2, 7))
        Q = make_points(rng.integers(0, 16, size=(m, 2)).tolist())
        cells = build_cells(compute_qmax(Q))
        for x, y in rng.integers(-8, 24, size=(30, 2)).tolist():
            for c in cells:
                if c.claims(x, y):
                    assert c.contains(x, y)
