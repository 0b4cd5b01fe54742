import numpy as np
import pytest

from annmax import Metric, Point, bisector, dist


def _equidistant(q, q2, pts, tol=0.0):
    for x, y in pts:
        p = Point(x, y)
        d1, d2 = dist(p, q, Metric.L1), dist(p, q2, Metric.L1)
        assert abs(d1 - d2) <= tol * max(1.0, d1), (x, y, d1, d2)


def test_h_bisector_example():
    q, q2 = Point(0, 0, 0), Point(2, 4, 1)
    b = bisector(q, q2)
    assert b.kind == "h-bisector"
    assert set(b.middle) == {(0.0, 3.0), (2.0, 1.0)}
    assert b.slope == -1
    # spot point on the left half-line
    p = Point(-5, 3)
    assert dist(p, q, Metric.L1) == dist(p, q2, Metric.L1) == 8
    _equidistant(q, q2, b.sample_points())


def test_axis_aligned_is_perpendicular_line():
    q, q2 = Point(0, 0, 0), Point(0, 4, 1)
    b = bisector(q, q2)
    assert b.kind == "line"
    assert b.middle[0][1] == 2.0
    dirs = {d for _, d in b.half_lines}
    assert dirs == {(-1.0, 0.0), (1.0, 0.0)}  # the horizontal line y = 2
    _equidistant(q, q2, b.sample_points())


def test_square_case_simplified_to_vertical_half_lines():
    q, q2 = Point(0, 0, 0), Point(2, 2, 1)
    b = bisector(q, q2)
    assert b.kind == "v-bisector"
    assert set(b.middle) == {(0.0, 2.0), (2.0, 0.0)}
    dirs = {d for _, d in b.half_lines}
    assert dirs == {(0.0, 1.0), (0.0, -1.0)}
    _equidistant(q, q2, b.sample_points())


def test_coincident_sites_rejected():
    with pytest.raises(ValueError, match="coincident sites"):
        bisector(Point(1, 1, 0), Point(1, 1, 1))


def test_sampled_points_equidistant_random():
    rng = np.random.default_rng(20)
    for _ in range(300):
        (x1, y1), (x2, y2) = rng.integers(-40, 40, size=(2, 2)).tolist()
        if (x1, y1) == (x2, y2):
            continue
        q, q2 = Point(2 * x1, 2 * y1, 0), Point(2 * x2, 2 * y2, 1)
        b = bisector(q, q2)
        _equidistant(q, q2, b.sample_points(), tol=1e-9)


def test_middle_slope_is_diagonal_or_line():
    rng = np.random.default_rng(21)
    for _ in range(200):
        (x1, y1), (x2, y2) = rng.integers(-30, 30, size=(2, 2)).tolist()
        if (x1, y1) == (x2, y2):
            continue
        b = bisector(Point(x1, y1, 0), Point(x2, y2, 1))
        if b.kind == "line":
            assert b.slope is None
        else:
            (ax, ay), (bx, by) = b.middle
            if (ax, ay) != (bx, by):
                assert abs(bx - ax) == abs(by - ay)
            assert b.slope in (-1, 1)
