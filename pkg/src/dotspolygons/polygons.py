"""Rules engine for Dots & Polygons, both scoring variants.

States are immutable; apply_move returns a fresh state plus a MoveOutcome.
Works on arbitrary point sets, including constructed hardness boards whose
pre-scored regions may have undrawn boundary segments ("ground gates").
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (GeometryError, Point, PolygonCycle, Rat, Segment,
                       convex_hull, midpoint, orient, point_in_polygon, rat,
                       rat_from_str, rat_to_float, rat_to_str,
                       segment_blocked_by_point, segments_conflict,
                       signed_area, walk_signed_area)
from .subdivision import DisjointSet, Rotation

HOLES = "holes"
SIMPLE = "simple"
VARIANTS = (HOLES, SIMPLE)

R = "R"
B = "B"


def opponent(player: str) -> str:
    return B if player == R else R


class MoveError(ValueError):
    """Illegal move, carrying the violated rule as .reason."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"illegal move: {reason}" + (f" ({detail})" if detail else ""))
        self.reason = reason


@dataclass(frozen=True)
class ScoredRegion:
    boundary: tuple[Point, ...]          # closed walk, coordinates
    holes: tuple[tuple[Point, ...], ...]
    owner: str
    area: Rat


@dataclass(frozen=True)
class MoveOutcome:
    scored: Rat
    new_regions: tuple[ScoredRegion, ...]
    extra_turn: bool
    game_over: bool


@dataclass(frozen=True)
class PolygonGameState:
    points: tuple[Point, ...]
    edges: frozenset[tuple[int, int]]
    regions: tuple[ScoredRegion, ...]
    score_r: Rat
    score_b: Rat
    to_move: str
    variant: str

    def score_of(self, player: str) -> Rat:
        return self.score_r if player == R else self.score_b

    def segment(self, i: int, j: int) -> Segment:
        return Segment(self.points[i], self.points[j])


def _edge_key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def new_game(points: Sequence[Point], variant: str) -> PolygonGameState:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    pts = tuple(points)
    if len(pts) < 3:
        raise GeometryError("need at least 3 points")
    if len(set(pts)) != len(pts):
        raise GeometryError("duplicate points")
    if all(orient(pts[0], pts[1], p) == 0 for p in pts[2:]):
        raise GeometryError("all points collinear")
    return PolygonGameState(
        points=pts, edges=frozenset(), regions=(),
        score_r=Fraction(0), score_b=Fraction(0), to_move=R, variant=variant)


def make_state(points, edges, regions, score_r, score_b, to_move, variant,
               validate: bool = True) -> PolygonGameState:
    """Build a (possibly mid-game) state directly; used by the reductions."""
    state = PolygonGameState(
        points=tuple(points),
        edges=frozenset(_edge_key(i, j) for i, j in edges),
        regions=tuple(regions),
        score_r=rat(score_r), score_b=rat(score_b),
        to_move=to_move, variant=variant)
    if validate:
        validate_state(state)
    return state


def validate_state(s: PolygonGameState):
    pts = s.points
    segs = {e: Segment(pts[e[0]], pts[e[1]]) for e in s.edges}
    edge_list = list(segs.items())
    for a in range(len(edge_list)):
        for b in range(a + 1, len(edge_list)):
            if segments_conflict(edge_list[a][1], edge_list[b][1]):
                raise GeometryError(
                    f"edges {edge_list[a][0]} and {edge_list[b][0]} conflict")
    for e, seg in segs.items():
        for k, p in enumerate(pts):
            if k in e:
                continue
            if segment_blocked_by_point(seg, p):
                raise GeometryError(f"edge {e} passes through point {k}")
    for e, seg in segs.items():
        if _segment_enters_scored(s, seg):
            raise GeometryError(f"edge {e} lies in a scored region")
    total = sum((reg.area for reg in s.regions), Fraction(0))
    if s.score_r + s.score_b != total:
        raise GeometryError("scores do not match region areas")
    if total > signed_area(convex_hull(pts)):
        raise GeometryError("scored area exceeds hull area")


# -- region geometry -------------------------------------------------------

def _pin(p: Point, cycle_points: list[Point]) -> str:
    return point_in_polygon(p, PolygonCycle(cycle_points), check_simple=False)


def _bbox(points) -> tuple:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def _region_bbox(region: ScoredRegion) -> tuple:
    box = region.__dict__.get("_bbox")
    if box is None:
        box = _bbox(region.boundary)
        object.__setattr__(region, "_bbox", box)
    return box


def _in_bbox(p: Point, box) -> bool:
    x0, y0, x1, y1 = box
    return x0 <= p.x <= x1 and y0 <= p.y <= y1


def _in_footprint(p: Point, region: ScoredRegion, points=None) -> bool:
    """Is p strictly inside the region (boundary minus holes)?"""
    if not _in_bbox(p, _region_bbox(region)):
        return False
    if _pin(p, list(region.boundary)) != "inside":
        return False
    return all(_pin(p, list(h)) == "outside" for h in region.holes)


def _segment_crossing_params(seg: Segment, edge: Segment) -> list[Fraction]:
    """Parameters t along seg where it meets edge (exact)."""
    p0, p1 = seg.a, seg.b
    q0, q1 = edge.a, edge.b
    dx1, dy1 = p1.x - p0.x, p1.y - p0.y
    dx2, dy2 = q1.x - q0.x, q1.y - q0.y
    denom = dx1 * dy2 - dy1 * dx2
    ex, ey = q0.x - p0.x, q0.y - p0.y
    if denom != 0:
        t = (ex * dy2 - ey * dx2) / denom
        u = (ex * dy1 - ey * dx1) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return [t]
        return []
    # parallel: collinear overlap contributes both projected endpoints
    if ex * dy1 - ey * dx1 != 0:
        return []
    params = []
    for q in (q0, q1):
        if dx1 != 0:
            t = (q.x - p0.x) / dx1
        else:
            t = (q.y - p0.y) / dy1
        if 0 <= t <= 1:
            params.append(t)
    return params


def _segment_enters_scored(s: PolygonGameState, seg: Segment) -> bool:
    """Does the open segment intersect any scored region's open interior?"""
    for region in s.regions:
        rings = [list(region.boundary)] + [list(h) for h in region.holes]
        ts = {Fraction(0), Fraction(1)}
        for ring in rings:
            n = len(ring)
            for k in range(n):
                edge = Segment(ring[k], ring[(k + 1) % n])
                ts.update(_segment_crossing_params(seg, edge))
        cuts = sorted(ts)
        for t0, t1 in zip(cuts, cuts[1:]):
            if t1 <= t0:
                continue
            tm = (t0 + t1) / 2
            sample = Point(seg.a.x + (seg.b.x - seg.a.x) * tm,
                           seg.a.y + (seg.b.y - seg.a.y) * tm)
            if _in_footprint(sample, region, s.points):
                return True
    return False


def interior_point(cycle_points: list[Point]) -> Point:
    """A rational point strictly inside a simple polygon."""
    verts = cycle_points
    n = len(verts)
    m = min(range(n), key=lambda k: (verts[k].x, verts[k].y))
    a, v, b = verts[m - 1], verts[m], verts[(m + 1) % n]
    inside = []
    for k, q in enumerate(verts):
        if k in (m, (m - 1) % n, (m + 1) % n):
            continue
        if _point_strictly_in_triangle(q, a, v, b):
            inside.append(q)
    if not inside:
        return Point((a.x + v.x + b.x) / 3, (a.y + v.y + b.y) / 3)
    # farthest such vertex from line a-b; midpoint of v-q is interior
    def dist_key(q):
        return abs((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x))
    q = max(inside, key=dist_key)
    return midpoint(v, q)


def _point_strictly_in_triangle(p, a, b, c) -> bool:
    s1 = orient(a, b, p)
    s2 = orient(b, c, p)
    s3 = orient(c, a, p)
    if 0 in (s1, s2, s3):
        return False
    return s1 == s2 == s3


# -- move legality ---------------------------------------------------------

def check_move(s: PolygonGameState, i: int, j: int):
    if i == j or not (0 <= i < len(s.points)) or not (0 <= j < len(s.points)):
        raise MoveError("invalid-index")
    key = _edge_key(i, j)
    if key in s.edges:
        raise MoveError("duplicate")
    seg = s.segment(i, j)
    for k, p in enumerate(s.points):
        if k in key:
            continue
        if segment_blocked_by_point(seg, p):
            raise MoveError("through-point", f"point {k}")
    for e in s.edges:
        if segments_conflict(seg, Segment(s.points[e[0]], s.points[e[1]])):
            raise MoveError("crossing", f"edge {e}")
    if _segment_enters_scored(s, seg):
        raise MoveError("in-scored-area")


def is_legal(s: PolygonGameState, i: int, j: int) -> bool:
    try:
        check_move(s, i, j)
        return True
    except MoveError:
        return False


def legal_moves(s: PolygonGameState) -> list[tuple[int, int]]:
    n = len(s.points)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if is_legal(s, i, j)]


# -- applying a move -------------------------------------------------------

def _components(s: PolygonGameState) -> DisjointSet:
    ds = DisjointSet(len(s.points))
    for i, j in s.edges:
        ds.union(i, j)
    return ds


def _walk_is_simple(walk: list[int]) -> bool:
    return len(set(walk)) == len(walk)


def _region_from_walk(s, walk, owner, holes=()):
    pts = [s.points[k] for k in walk]
    area = walk_signed_area(pts)
    hole_area = Fraction(0)
    for h in holes:
        hole_area += walk_signed_area(list(h))
    return ScoredRegion(boundary=tuple(pts),
                        holes=tuple(tuple(h) for h in holes),
                        owner=owner, area=area - hole_area)


def _score_simple_walk(s: PolygonGameState, walk: list[int], mover: str) -> Optional[ScoredRegion]:
    """Score a candidate new bounded face under the Simple rules."""
    if not _walk_is_simple(walk):
        return None
    pts = [s.points[k] for k in walk]
    poly = PolygonCycle(pts)
    box = _bbox(tuple(pts))
    on_walk = set(walk)
    for k, p in enumerate(s.points):
        if k in on_walk or not _in_bbox(p, box):
            continue
        if point_in_polygon(p, poly, check_simple=False) == "inside":
            return None
    rep = interior_point(pts)
    for region in s.regions:
        if _in_footprint(rep, region):
            return None
    return _region_from_walk(s, walk, mover)


def _score_holes_walk(s: PolygonGameState, walk: list[int], mover: str) -> Optional[ScoredRegion]:
    """Score the newly enclosed area minus previously scored parts."""
    if _walk_is_simple(walk):
        rep = interior_point([s.points[k] for k in walk])
        for region in s.regions:
            if _in_footprint(rep, region):
                return None  # closing along the boundary of scored ground
    walk_pts = [s.points[k] for k in walk]
    # Maximal scored regions strictly inside the new cycle become holes.
    inside = []
    for region in s.regions:
        rep = interior_point(list(region.boundary))
        if _pin(rep, walk_pts) == "inside":
            inside.append(region)
    maximal = []
    for region in inside:
        rep = interior_point(list(region.boundary))
        if not any(other is not region
                   and _pin(rep, list(other.boundary)) == "inside"
                   for other in inside):
            maximal.append(region)
    holes = [r.boundary for r in maximal]
    new_region = _region_from_walk(s, walk, mover, holes=holes)
    if new_region.area <= 0:
        return None
    return new_region


def apply_move_core(s: PolygonGameState, i: int, j: int, trusted: bool = False,
                    master=None
                    ) -> tuple[PolygonGameState, Rat, tuple[ScoredRegion, ...]]:
    """Apply without the terminal scan; callers wanting MoveOutcome use
    apply_move. trusted=True skips legality validation for callers that
    already proved it; master is an optional precomputed MasterRotation."""
    if not trusted:
        check_move(s, i, j)
    key = _edge_key(i, j)
    mover = s.to_move
    same_component = _components(s).connected(i, j)
    new_edges = s.edges | {key}

    new_regions: list[ScoredRegion] = []
    if same_component:
        if master is not None:
            from .subdivision import FilteredRotation
            rotation = FilteredRotation(master, new_edges)
        else:
            rotation = Rotation(s.points, new_edges)
        walk_left = rotation.walk_face(i, j)
        walk_right = rotation.walk_face(j, i)
        for walk in (walk_left, walk_right):
            area = walk_signed_area([s.points[k] for k in walk])
            if area <= 0:
                continue
            if s.variant == SIMPLE:
                region = _score_simple_walk(s, walk, mover)
            else:
                region = _score_holes_walk(s, walk, mover)
            if region is not None:
                new_regions.append(region)

    scored = sum((r.area for r in new_regions), Fraction(0))
    score_r = s.score_r + (scored if mover == R else 0)
    score_b = s.score_b + (scored if mover == B else 0)
    next_player = mover if scored > 0 else opponent(mover)
    state = PolygonGameState(
        points=s.points, edges=new_edges,
        regions=s.regions + tuple(new_regions),
        score_r=score_r, score_b=score_b,
        to_move=next_player, variant=s.variant)
    return state, scored, tuple(new_regions)


def apply_move(s: PolygonGameState, i: int, j: int) -> tuple[PolygonGameState, MoveOutcome]:
    state, scored, new_regions = apply_move_core(s, i, j)
    over = is_terminal(state)
    outcome = MoveOutcome(scored=scored, new_regions=new_regions,
                          extra_turn=scored > 0 and not over, game_over=over)
    return state, outcome


def _first_legal_move(s: PolygonGameState):
    n = len(s.points)
    for i in range(n):
        for j in range(i + 1, n):
            if is_legal(s, i, j):
                yield (i, j)
                return


def is_terminal(s: PolygonGameState) -> bool:
    return next(_first_legal_move(s), None) is None


def winner(s: PolygonGameState) -> str:
    if not is_terminal(s):
        raise ValueError("winner() requires a terminal state")
    if s.score_r > s.score_b:
        return R
    if s.score_b > s.score_r:
        return B
    return "Draw"


# -- serialization ---------------------------------------------------------

def state_to_json(s: PolygonGameState) -> dict:
    return {
        "variant": s.variant,
        "points": [[rat_to_str(p.x), rat_to_str(p.y)] for p in s.points],
        "pointsFloat": [[rat_to_float(p.x), rat_to_float(p.y)] for p in s.points],
        "edges": sorted([list(e) for e in s.edges]),
        "regions": [
            {
                "boundary": [[rat_to_str(p.x), rat_to_str(p.y)] for p in r.boundary],
                "holes": [[[rat_to_str(p.x), rat_to_str(p.y)] for p in h]
                          for h in r.holes],
                "owner": r.owner,
                "area": rat_to_str(r.area),
            }
            for r in s.regions
        ],
        "scoreR": rat_to_str(s.score_r),
        "scoreB": rat_to_str(s.score_b),
        "scoreRFloat": rat_to_float(s.score_r),
        "scoreBFloat": rat_to_float(s.score_b),
        "toMove": s.to_move,
    }


def state_from_json(data: dict, validate: bool = True) -> PolygonGameState:
    points = [Point(rat_from_str(x), rat_from_str(y)) for x, y in data["points"]]
    def _pts(seq):
        return tuple(Point(rat_from_str(x), rat_from_str(y)) for x, y in seq)

    regions = [
        ScoredRegion(boundary=_pts(r["boundary"]),
                     holes=tuple(_pts(h) for h in r.get("holes", [])),
                     owner=r["owner"],
                     area=rat_from_str(r["area"]))
        for r in data.get("regions", [])
    ]
    return make_state(points, [tuple(e) for e in data.get("edges", [])], regions,
                      rat_from_str(data.get("scoreR", "0")),
                      rat_from_str(data.get("scoreB", "0")),
                      data.get("toMove", R), data["variant"], validate=validate)
