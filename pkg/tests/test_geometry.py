import math

import numpy as np
import pytest

from annmax import CanonicalFrame, Metric, Point, dist, make_points, rotate45
from annmax.geometry import orient_sign


def test_dist_l1_example():
    assert dist(Point(0, 0), Point(3, 4), Metric.L1) == 7


def test_dist_l2_example():
    assert dist(Point(0, 0), Point(3, 4), Metric.L2) == 5


def test_dist_identity():
    assert dist(Point(2, 2), Point(2, 2), Metric.L1) == 0


def test_dist_symmetry_and_zero_iff_equal():
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b = make_points(rng.integers(-50, 50, size=(2, 2)).tolist())
        for m in Metric:
            assert dist(a, b, m) == dist(b, a, m)
            assert (dist(a, b, m) == 0) == ((a.x, a.y) == (b.x, b.y))


def test_rotate45_examples():
    assert (rotate45(Point(1, 0)).u, rotate45(Point(1, 0)).v) == (1, 1)
    assert (rotate45(Point(0, 0)).u, rotate45(Point(0, 0)).v) == (0, 0)
    assert (rotate45(Point(2, 3)).u, rotate45(Point(2, 3)).v) == (5, -1)


def test_rotate45_round_trip_exact_on_integers():
    rng = np.random.default_rng(1)
    for x, y in rng.integers(-10**6, 10**6, size=(1000, 2)).tolist():
        r = rotate45(Point(x, y))
        assert r.to_xy() == (x, y)


def test_l1_equals_chebyshev_of_rotation():
    rng = np.random.default_rng(2)
    a = rng.integers(-10**6, 10**6, size=(100_000, 2)).astype(float)
    b = rng.integers(-10**6, 10**6, size=(100_000, 2)).astype(float)
    l1 = np.abs(a - b).sum(axis=1)
    ua, va = a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]
    ub, vb = b[:, 0] + b[:, 1], b[:, 0] - b[:, 1]
    cheb = np.maximum(np.abs(ua - ub), np.abs(va - vb))
    assert (l1 == cheb).all()


def test_triangle_inequality_sampled():
    rng = np.random.default_rng(3)
    for _ in range(2000):
        a, b, c = make_points(rng.integers(-1000, 1000, size=(3, 2)).tolist())
        assert dist(a, c, Metric.L1) <= dist(a, b, Metric.L1) + dist(b, c, Metric.L1)
        lhs = dist(a, c, Metric.L2)
        rhs = dist(a, b, Metric.L2) + dist(b, c, Metric.L2)
        assert lhs <= rhs * (1 + 1e-12)


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Point(0.0, float("inf"))


def test_canonical_frame_offsets():
    f = CanonicalFrame.at(Point(3, 7))
    assert (f.l_plus, f.l_minus, f.l_h, f.l_v) == (4, 10, 7, 3)


def test_orient_sign_basic_and_degenerate():
    assert orient_sign(0, 0, 1, 0, 0, 1) == 1
    assert orient_sign(0, 0, 0, 1, 1, 0) == -1
    assert orient_sign(0, 0, 1, 1, 2, 2) == 0
    # near-collinear large coordinates exercise the exact fallback
    big = 2.0**40
    assert orient_sign(0, 0, big, big, 2 * big, 2 * big) == 0
    assert orient_sign(0, 0, big, big, 2 * big, 2 * big + 1) == 1
    assert orient_sign(0, 0, big, big, 2 * big, 2 * big - 1) == -1
