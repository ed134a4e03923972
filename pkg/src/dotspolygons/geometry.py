"""Exact rational planar primitives.

All coordinates are fractions.Fraction, so every predicate here is exact:
no epsilons, no rounding. Floats only ever appear at serialization
boundaries (see rat_to_float).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


class GeometryError(ValueError):
    """Raised on contract violations (degenerate or invalid input)."""


def rat(value) -> Rat:
    """Coerce ints, strings like '3/4', or Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise GeometryError("refusing to build a rational from a float; pass a string or Fraction")
    return Fraction(value)


def rat_to_str(value: Rat) -> str:
    """Serialize as 'num/den', omitting '/1'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rat_from_str(text: str) -> Rat:
    return Fraction(text)


def rat_to_float(value: Rat) -> float:
    return value.numerator / value.denominator


@dataclass(frozen=True, order=True)
class Point:
    x: Rat
    y: Rat

    def __repr__(self):
        return f"Point({rat_to_str(self.x)}, {rat_to_str(self.y)})"


def pt(x, y) -> Point:
    return Point(rat(x), rat(y))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError("degenerate segment: endpoints coincide")


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): +1 ccw, -1 cw, 0 collinear.

    Works on raw numerators and denominators so no normalized Fractions are
    allocated; this predicate dominates every geometric hot path.
    """
    pxn, pxd = p.x.numerator, p.x.denominator
    pyn, pyd = p.y.numerator, p.y.denominator
    qxn, qxd = q.x.numerator, q.x.denominator
    qyn, qyd = q.y.numerator, q.y.denominator
    rxn, rxd = r.x.numerator, r.x.denominator
    ryn, ryd = r.y.numerator, r.y.denominator
    # (q.x - p.x) = n1/d1 with d1 > 0, etc.
    n1 = qxn * pxd - pxn * qxd
    d1 = qxd * pxd
    n2 = ryn * pyd - pyn * ryd
    d2 = ryd * pyd
    n3 = qyn * pyd - pyn * qyd
    d3 = qyd * pyd
    n4 = rxn * pxd - pxn * rxd
    d4 = rxd * pxd
    cross = n1 * n2 * d3 * d4 - n3 * n4 * d1 * d2
    if cross > 0:
        return 1
    if cross < 0:
        return -1
    return 0


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    # assumes p, q, r collinear; is r on closed segment pq?
    return (min(p.x, q.x) <= r.x <= max(p.x, q.x)
            and min(p.y, q.y) <= r.y <= max(p.y, q.y))


def segment_blocked_by_point(s: Segment, p: Point) -> bool:
    """True iff p lies on the closed segment s. p must not be an endpoint."""
    if p == s.a or p == s.b:
        raise GeometryError("point coincides with a segment endpoint")
    return orient(s.a, s.b, p) == 0 and _on_segment(s.a, s.b, p)


def segments_conflict(s: Segment, t: Segment) -> bool:
    """True iff s and t share any point other than a common endpoint.

    Proper crossings, T-junctions, and collinear overlaps all conflict;
    touching at exactly one shared endpoint does not.
    """
    shared = {s.a, s.b} & {t.a, t.b}
    if len(shared) == 2:
        return True  # identical or reversed segment
    if len(shared) == 1:
        # Two distinct straight segments meet twice only if collinear, so a
        # shared endpoint conflicts exactly when they overlap along a line.
        common = next(iter(shared))
        s_other = s.b if common == s.a else s.a
        t_other = t.b if common == t.a else t.a
        if orient(common, s_other, t_other) != 0:
            return False
        return _on_segment(s.a, s.b, t_other) or _on_segment(t.a, t.b, s_other)
    d1 = orient(s.a, s.b, t.a)
    d2 = orient(s.a, s.b, t.b)
    d3 = orient(t.a, t.b, s.a)
    d4 = orient(t.a, t.b, s.b)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True  # proper crossing
    # Every remaining intersection has an endpoint of one segment on the
    # other closed segment (T-junctions and collinear overlaps included).
    for seg, point in ((s, t.a), (s, t.b), (t, s.a), (t, s.b)):
        if orient(seg.a, seg.b, point) == 0 and _on_segment(seg.a, seg.b, point):
            return True
    return False


class PolygonCycle:
    """Closed polygon given by its vertex sequence (no repeated last vertex)."""

    def __init__(self, vertices: Sequence[Point]):
        vertices = list(vertices)
        if len(vertices) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        for u, v in zip(vertices, vertices[1:] + vertices[:1]):
            if u == v:
                raise GeometryError("consecutive polygon vertices coincide")
        self.vertices = vertices

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> Iterable[Segment]:
        verts = self.vertices
        for i in range(len(verts)):
            yield Segment(verts[i], verts[(i + 1) % len(verts)])

    def reversed(self) -> "PolygonCycle":
        return PolygonCycle(list(reversed(self.vertices)))

    def is_simple(self) -> bool:
        segs = list(self.edges())
        n = len(segs)
        for i in range(n):
            for j in range(i + 1, n):
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if adjacent:
                    # consecutive edges share exactly one endpoint by
                    # construction; conflict here means overlap/backtrack
                    if segments_conflict(segs[i], segs[j]):
                        return False
                elif segments_conflict(segs[i], segs[j]):
                    return False
        # no vertex may sit on a non-incident edge (covered by conflicts of
        # edges, but a vertex of the cycle could coincide with another vertex)
        if len(set(self.vertices)) != len(self.vertices):
            return False
        return True

    def __repr__(self):
        return f"PolygonCycle({self.vertices!r})"


def signed_area(cycle: PolygonCycle | Sequence[Point]) -> Rat:
    """Shoelace sum; positive for counterclockwise orientation."""
    verts = list(cycle.vertices if isinstance(cycle, PolygonCycle) else cycle)
    total = Fraction(0)
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total / 2


def walk_signed_area(walk: Sequence[Point]) -> Rat:
    """Shoelace over an arbitrary closed walk (repeats allowed)."""
    total = Fraction(0)
    n = len(walk)
    for i in range(n):
        a, b = walk[i], walk[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total / 2


def point_in_polygon(p: Point, cycle: PolygonCycle, check_simple: bool = True) -> str:
    """Exact ray-crossing classification: 'inside', 'boundary' or 'outside'."""
    if check_simple and not cycle.is_simple():
        raise GeometryError("point_in_polygon requires a simple cycle")
    verts = cycle.vertices
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if p == a or (orient(a, b, p) == 0 and _on_segment(a, b, p)):
            return "boundary"
    # Count crossings of the rightward horizontal ray from p, with the
    # half-open rule on y; the crossing abscissa comparison is expanded to
    # integer arithmetic to avoid Fraction churn.
    inside = False
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            # x_cross - p.x = ((a.x-p.x)(b.y-a.y) + (b.x-a.x)(p.y-a.y)) / (b.y-a.y)
            dyn = b.y.numerator * a.y.denominator - a.y.numerator * b.y.denominator
            dyd = b.y.denominator * a.y.denominator
            axn = a.x.numerator * p.x.denominator - p.x.numerator * a.x.denominator
            axd = a.x.denominator * p.x.denominator
            bxn = b.x.numerator * a.x.denominator - a.x.numerator * b.x.denominator
            bxd = b.x.denominator * a.x.denominator
            pyn = p.y.numerator * a.y.denominator - a.y.numerator * p.y.denominator
            pyd = p.y.denominator * a.y.denominator
            num = axn * dyn * bxd * pyd + bxn * pyn * axd * dyd
            if (num > 0) == (dyn > 0) and num != 0:
                inside = not inside
    return "inside" if inside else "outside"


def convex_hull(points: Sequence[Point]) -> PolygonCycle:
    """Counterclockwise hull keeping collinear boundary points as vertices."""
    pts = sorted(set(points))
    if len(pts) < 3:
        raise GeometryError("hull needs at least 3 distinct points")
    if all(orient(pts[0], pts[1], p) == 0 for p in pts[2:]):
        raise GeometryError("all points collinear")

    def half(points_sorted):
        chain: list[Point] = []
        for p in points_sorted:
            # pop only on strict right turns so collinear points survive
            while len(chain) >= 2 and orient(chain[-2], chain[-1], p) < 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    # Strict-turn chains can leave interior collinear points duplicated at the
    # extremes; dedupe while preserving order.
    seen = set()
    out = []
    for p in hull:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return PolygonCycle(out)


def hull_area(points: Sequence[Point]) -> Rat:
    return signed_area(convex_hull(points))


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)
