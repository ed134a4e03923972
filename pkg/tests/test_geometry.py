import random
from fractions import Fraction

import pytest

from dotspolygons.geometry import (GeometryError, Point, PolygonCycle,
                                   Segment, convex_hull, orient,
                                   point_in_polygon, pt, rat_from_str,
                                   rat_to_str, segment_blocked_by_point,
                                   segments_conflict, signed_area)


def seg(ax, ay, bx, by):
    return Segment(pt(ax, ay), pt(bx, by))


def test_orient_basalong_cases():
    assert orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orient(pt(0, 0), pt(1, 0), pt(2, 0)) == 0
    assert orient(pt(0, 0), pt(0, 1), pt(1, 0)) == -1


def test_orient_antisymmetric_random():
    rng = random.Random(7)
    for _ in range(300):
        p, q, r = (pt(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                      Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
                   for _ in range(3))
        assert orient(p, q, r) == -orient(p, r, q)


def test_segments_conflict_crossing():
    assert segments_conflict(seg(0, 0, 2, 2), seg(0, 2, 2, 0))


def test_segments_conflict_shared_endpoint_only():
    assert not segments_conflict(seg(0, 0, 1, 0), seg(1, 0, 2, 1))


def test_segments_conflict_collinear_overlap():
    assert segments_conflict(seg(0, 0, 2, 0), seg(1, 0, 3, 0))


def test_segments_conflict_t_junction():
    assert segments_conflict(seg(0, 0, 2, 0), seg(1, 0, 1, 1))


def test_segments_conflict_collinear_extension_share_endpoint():
    # touching end to end along one line is only the shared endpoint: fine
    assert not segments_conflict(seg(0, 0, 1, 0), seg(1, 0, 2, 0))
    # but overlapping beyond the shared endpoint conflicts
    assert segments_conflict(seg(0, 0, 2, 0), seg(2, 0, 1, 0))


def test_segments_conflict_symmetry_random():
    rng = random.Random(11)
    for _ in range(400):
        coords = [rng.randint(-4, 4) for _ in range(8)]
        try:
            s = seg(*coords[:4])
            t = seg(*coords[4:])
        except GeometryError:
            continue
        assert segments_conflict(s, t) == segments_conflict(t, s)


def test_blocked_by_point():
    assert segment_blocked_by_point(seg(0, 0, 2, 0), pt(1, 0))
    assert not segment_blocked_by_point(seg(0, 0, 2, 0), pt(1, 1))
    assert segment_blocked_by_point(seg(0, 0, 2, 2), pt(1, 1))
    with pytest.raises(GeometryError):
        segment_blocked_by_point(seg(0, 0, 2, 0), pt(0, 0))


def square(ccw=True):
    ps = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]
    return PolygonCycle(ps if ccw else list(reversed(ps)))


def test_signed_area():
    assert signed_area(square()) == 1
    assert signed_area(PolygonCycle([pt(0, 0), pt(1, 0), pt(0, 1)])) == Fraction(1, 2)
    assert signed_area(square(ccw=False)) == -1


def test_signed_area_reversal_random():
    rng = random.Random(3)
    for _ in range(100):
        ps = []
        while len(ps) < 5:
            p = pt(rng.randint(-9, 9), rng.randint(-9, 9))
            if not ps or p != ps[-1]:
                ps.append(p)
        if ps[0] == ps[-1]:
            continue
        cyc = PolygonCycle(ps)
        assert signed_area(cyc.reversed()) == -signed_area(cyc)


def test_point_in_polygon():
    sq = square()
    assert point_in_polygon(pt("1/2", "1/2"), sq) == "inside"
    assert point_in_polygon(pt(1, "1/2"), sq) == "boundary"
    assert point_in_polygon(pt(2, 2), sq) == "outside"


def test_point_in_polygon_fan_triangulation():
    # every point strictly inside a fan triangle of a simple cycle is inside
    cyc = PolygonCycle([pt(0, 0), pt(4, 0), pt(5, 3), pt(2, 5), pt(-1, 2)])
    v0 = cyc.vertices[0]
    rng = random.Random(5)
    for k in range(1, len(cyc.vertices) - 1):
        a, b = cyc.vertices[k], cyc.vertices[k + 1]
        for _ in range(20):
            w = [Fraction(rng.randint(1, 10)) for _ in range(3)]
            tot = sum(w)
            p = Point((w[0] * v0.x + w[1] * a.x + w[2] * b.x) / tot,
                      (w[0] * v0.y + w[1] * a.y + w[2] * b.y) / tot)
            assert point_in_polygon(p, cyc) == "inside"


def test_point_in_polygon_requires_simple():
    bow = PolygonCycle([pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)])
    with pytest.raises(GeometryError):
        point_in_polygon(pt("1/4", "1/2"), bow)


def test_convex_hull_square():
    hull = convex_hull([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])
    assert len(hull) == 4
    assert signed_area(hull) == 1


def test_convex_hull_center_excluded():
    hull = convex_hull([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt("1/2", "1/2")])
    assert len(hull) == 4


def test_convex_hull_keeps_collinear_boundary_point():
    hull = convex_hull([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt("1/2", 0)])
    assert len(hull) == 5
    assert pt("1/2", 0) in hull.vertices


def test_convex_hull_collinear_rejected():
    with pytest.raises(GeometryError):
        convex_hull([pt(0, 0), pt(1, 1), pt(2, 2)])


def test_convex_hull_permutation_invariant():
    rng = random.Random(9)
    pts = [pt(0, 0), pt(4, 0), pt(4, 3), pt(1, 5), pt(2, 1), pt(2, 0)]
    base = convex_hull(pts).vertices
    for _ in range(20):
        shuffled = pts[:]
        rng.shuffle(shuffled)
        got = convex_hull(shuffled).vertices
        k = got.index(base[0])
        assert got[k:] + got[:k] == base


def test_rat_round_trip():
    assert rat_to_str(Fraction(3, 1)) == "3"
    assert rat_to_str(Fraction(-1, 2)) == "-1/2"
    assert rat_from_str("-1/2") == Fraction(-1, 2)
