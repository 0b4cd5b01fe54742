import numpy as np
import pytest

from annmax import Metric, Point, compute_qmax, dist, g_value, make_points
from helpers import scan_extremes


def test_unit_square():
    e = compute_qmax(make_points([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert (e.q1.x, e.q1.y) == (1, 1)
    assert (e.q2.x, e.q2.y) == (0, 1)
    assert (e.q3.x, e.q3.y) == (0, 0)
    assert (e.q4.x, e.q4.y) == (1, 0)
    assert len(e.distinct) == 4


def test_singleton():
    e = compute_qmax(make_points([(5, 5)]))
    assert all((q.x, q.y) == (5, 5) for q in (e.q1, e.q2, e.q3, e.q4))
    assert len(e.distinct) == 1


def test_empty_query_set():
    with pytest.raises(ValueError, match="empty query set"):
        compute_qmax([])


def test_extremes_match_linear_scan():
    rng = np.random.default_rng(10)
    for _ in range(200):
        Q = make_points(rng.integers(0, 10**6, size=(20, 2)).tolist())
        e = compute_qmax(Q)
        scan = scan_extremes(Q)
        # each holder attains its direction's extreme value
        assert e.q1.x + e.q1.y == scan["ne"].x + scan["ne"].y
        assert e.q2.y - e.q2.x == scan["nw"].y - scan["nw"].x
        assert e.q3.x + e.q3.y == scan["sw"].x + scan["sw"].y
        assert e.q4.y - e.q4.x == scan["se"].y - scan["se"].x
        if len({scan[d].id for d in scan}) == 4:
            assert (e.q1.id, e.q2.id, e.q3.id, e.q4.id) == (
                scan["ne"].id,
                scan["nw"].id,
                scan["sw"].id,
                scan["se"].id,
            )


def test_no_survivor_is_redundant():
    rng = np.random.default_rng(11)
    for _ in range(400):
        m = int(rng.integers(1, 9))
        grid = int(rng.choice([4, 8, 1000]))
        Q = make_points(rng.integers(0, grid, size=(m, 2)).tolist())
        e = compute_qmax(Q)
        scan = scan_extremes(Q)
        vals = {
            "ne": scan["ne"].x + scan["ne"].y,
            "nw": scan["nw"].y - scan["nw"].x,
            "sw": scan["sw"].x + scan["sw"].y,
            "se": scan["se"].y - scan["se"].x,
        }

        def attains(p, d):
            got = {"ne": p.x + p.y, "nw": p.y - p.x, "sw": p.x + p.y, "se": p.y - p.x}[d]
            return got == vals[d]

        # survivors together attain everything
        for d in vals:
            assert any(attains(p, d) for p in e.distinct)
        # removing any single survivor loses some direction
        if len(e.distinct) > 1:
            for drop in e.distinct:
                rest = [p for p in e.distinct if p.id != drop.id]
                assert not all(any(attains(p, d) for p in rest) for d in vals)


def test_g_value_examples():
    square = compute_qmax(make_points([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert g_value(Point(0, 0), square) == 2
    single = compute_qmax(make_points([(5, 5)]))
    assert g_value(Point(1, 1), single) == 8


def test_g_value_matches_full_scan():
    rng = np.random.default_rng(12)
    for _ in range(300):
        Q = make_points(rng.integers(0, 1000, size=(50, 2)).tolist())
        e = compute_qmax(Q)
        p = Point(*rng.integers(-2000, 2000, size=2).tolist())
        full = max(dist(p, q, Metric.L1) for q in Q)
        assert g_value(p, e) == full


def test_reduction_property_bulk():
    rng = np.random.default_rng(13)
    for _ in range(2000):
        m = int(rng.integers(1, 30))
        Q = make_points(rng.integers(0, 100, size=(m, 2)).tolist())
        e = compute_qmax(Q)
        px, py = rng.integers(-200, 300, size=2).tolist()
        p = Point(px, py)
        assert g_value(p, e) == max(dist(p, q, Metric.L1) for q in Q)
