"""Orthogonal embedding -> Dots & Simple Polygons game state (Theorem 3).

Geometry (unit = corridor_width / 2, grid spacing 4 units):
  room cell      at every grid point of the subdivided embedding; a corner
                 cell is a right triangle (two gate sides plus a drawn
                 hypotenuse), a straight or junction cell the full square,
                 an end cell a triangle whose second open side faces the
                 pre-scored filler (a ground gate).
  bell (tube)    one per embedding edge: the 2x4-unit corridor quad between
                 the facing room sides; its long walls are drawn, its two
                 ends are the gates shared with the rooms.
All remaining hull area is pre-scored filler split between the players to
realize the requested prior scores. Every pre-drawn polygon is triangle- or
quad-shaped with no two consecutive drawn sides whose endpoints see each
other, so no legal move scores before the opponent opens a structure: the
controlling player keeps the double-cross option.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..geometry import (GeometryError, Point, Rat, Segment, convex_hull,
                        orient, rat, segment_blocked_by_point, signed_area,
                        walk_signed_area)
from ..polygons import (B, R, SIMPLE, PolygonGameState, ScoredRegion,
                        legal_moves, make_state)
from .embedding import EmbeddingError, OrthogonalEmbedding, structure_cells

N, E, S, W = (0, 1), (1, 0), (0, -1), (-1, 0)


@dataclass(frozen=True)
class BellParameters:
    corridor_width: Rat = Fraction(2)

    @property
    def unit(self) -> Rat:
        # half the corridor width: the template below is drawn at unit 1
        return rat(self.corridor_width) / 2

    @property
    def a_bell(self) -> Rat:
        """Area of one bell: the corridor quad on an embedding edge."""
        return rat(self.corridor_width) ** 2

    def template(self) -> dict:
        """Capture-unit template (corner room + bell) at unit scale, with
        the designated mouth points that must not see each other."""
        u = self.unit
        room = [(-1, 1), (1, 1), (1, -1)]
        bell = [(1, 1), (3, 1), (3, -1), (1, -1)]
        scale = lambda pts: [Point(u * x, u * y) for x, y in pts]
        return {
            "room": scale(room),
            "bell": scale(bell),
            "a": Point(-u, u),        # far corner of the room
            "c": Point(3 * u, u),     # far corner of the bell
            "blocker": Point(u, u),   # the shared gate corner between them
        }

    def check_mouth_visibility(self):
        t = self.template()
        seg = Segment(t["a"], t["c"])
        if not segment_blocked_by_point(seg, t["blocker"]):
            raise GeometryError("bell mouth visibility block failed")


@dataclass
class PolygonBoard:
    state: PolygonGameState
    a_bell: Rat
    gates: list                 # (i, j) point-index pairs: the wall moves
    ground_gates: list          # subset of gates facing the filler
    cells: dict                 # grid point -> polygon (list of Point)
    bells: dict                 # frozenset(cell pair) -> polygon
    total_structure_area: Rat


def vcp_to_polygons(e: OrthogonalEmbedding,
                    bells: Optional[BellParameters] = None,
                    s_b: Rat = 0, s_r: Optional[Rat] = None) -> PolygonBoard:
    bells = bells or BellParameters()
    bells.check_mouth_visibility()
    u = bells.unit
    cells, links = structure_cells(e)
    neighbors: dict = {c: [] for c in cells}
    for link in links:
        a, b = tuple(link)
        neighbors[a].append(b)
        neighbors[b].append(a)

    def to_plane(grid, offset):
        return Point(u * (4 * grid[0] + offset[0]),
                     u * (4 * grid[1] + offset[1]))

    cell_polys: dict = {}
    drawn_segments: list[tuple[Point, Point]] = []
    gate_segments: list[tuple[Point, Point, str]] = []
    center_points: list[Point] = []
    for c in sorted(cells):
        dirs = sorted((nb[0] - c[0], nb[1] - c[1]) for nb in neighbors[c])
        template = _room_template(tuple(dirs))
        poly = [to_plane(c, off) for off in template["corners"]]
        cell_polys[c] = poly
        if template["center"]:
            center_points.append(to_plane(c, (0, 0)))
        for a, b in template["drawn"]:
            drawn_segments.append((to_plane(c, a), to_plane(c, b)))
        for a, b in template["ground"]:
            gate_segments.append((to_plane(c, a), to_plane(c, b), "ground"))
    bell_polys: dict = {}
    for link in sorted(links, key=sorted):
        a, b = sorted(link)
        d = (b[0] - a[0], b[1] - a[1])
        if d == E:
            quad = [(1, 1), (3, 1), (3, -1), (1, -1)]
            walls = [((1, 1), (3, 1)), ((1, -1), (3, -1))]
            ends = [((1, 1), (1, -1)), ((3, 1), (3, -1))]
        elif d == N:
            quad = [(-1, 1), (1, 1), (1, 3), (-1, 3)]
            walls = [((-1, 1), (-1, 3)), ((1, 1), (1, 3))]
            ends = [((-1, 1), (1, 1)), ((-1, 3), (1, 3))]
        else:
            raise EmbeddingError(f"link {a}-{b} is not a unit grid step")
        bell_polys[link] = [to_plane(a, off) for off in quad]
        for p, q in walls:
            drawn_segments.append((to_plane(a, p), to_plane(a, q)))
        for p, q in ends:
            gate_segments.append((to_plane(a, p), to_plane(a, q), "gate"))

    # index points and edges
    points: list[Point] = []
    index: dict[Point, int] = {}

    def idx(p: Point) -> int:
        if p not in index:
            index[p] = len(points)
            points.append(p)
        return index[p]

    for poly in list(cell_polys.values()) + list(bell_polys.values()):
        for p in poly:
            idx(p)
    for p in center_points:
        idx(p)
    edges = set()
    for a, b in drawn_segments:
        edges.add(tuple(sorted((idx(a), idx(b)))))
    gates = []
    ground_gates = []
    for a, b, kind in gate_segments:
        pair = tuple(sorted((idx(a), idx(b))))
        if pair not in gates:
            gates.append(pair)
            if kind == "ground":
                ground_gates.append(pair)

    # the hull is a padded bounding-box frame: four inert corner points and a
    # drawn border, so the filler tiling only ever meets axis-aligned or
    # diagonal coin edges
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    lo = Point(min(xs) - u, min(ys) - u)
    hi = Point(max(xs) + u, max(ys) + u)
    frame = [Point(lo.x, lo.y), Point(hi.x, lo.y),
             Point(hi.x, hi.y), Point(lo.x, hi.y)]
    for p in frame:
        idx(p)
    for a, b in zip(frame, frame[1:] + frame[:1]):
        edges.add(tuple(sorted((idx(a), idx(b)))))

    # pre-scored filler: frame minus the structure, tiled exactly
    coin_polys = list(cell_polys.values()) + list(bell_polys.values())
    tiles = _grey_tiles(lo, hi, coin_polys, u)
    total_structure = sum((abs(signed_area_of(p)) for p in coin_polys),
                          Fraction(0))
    grey_total = sum((abs(signed_area_of(t)) for t in tiles), Fraction(0))
    s_b = rat(s_b)
    s_r = grey_total - s_b if s_r is None else rat(s_r)
    if s_b + s_r != grey_total or s_b < 0 or s_r < 0:
        raise EmbeddingError(
            f"prior scores must split the filler area {grey_total} exactly")
    regions = _assign_tiles(tiles, s_b)

    state = make_state(points, edges, regions, score_r=s_r, score_b=s_b,
                       to_move=B, variant=SIMPLE, validate=True)
    return PolygonBoard(state=state, a_bell=bells.a_bell, gates=gates,
                        ground_gates=ground_gates, cells=cell_polys,
                        bells=bell_polys,
                        total_structure_area=total_structure)


def signed_area_of(poly) -> Rat:
    return walk_signed_area(list(poly))


def _room_template(dirs: tuple) -> dict:
    """Corner offsets and side roles for a cell, by its open directions.

    Two pre-drawn walls meeting at a convex corner would admit an instantly
    closable sliver, so walls are drawn only where they continue a tube wall
    collinearly; everything else is a gate (toward a tube) or a ground gate
    (toward the filler). Turn cells are fully gated squares with a center
    point that blocks their post-seal diagonal slivers.
    """
    corners = {"nw": (-1, 1), "ne": (1, 1), "se": (1, -1), "sw": (-1, -1)}
    side = {N: ("nw", "ne"), E: ("ne", "se"), S: ("se", "sw"), W: ("sw", "nw")}
    dset = set(dirs)
    if len(dset) == 0 or len(dset) > 3:
        raise EmbeddingError(f"cell with degree {len(dset)} unsupported")
    square_order = ["nw", "ne", "se", "sw"]

    def seg(names):
        return (corners[names[0]], corners[names[1]])

    if len(dset) == 1:
        # end cell: triangle; only the side collinear with the tube's wall
        # is drawn, the hypotenuse faces the filler as a ground gate
        d = next(iter(dset))
        drawn_dir = {E: N, W: S, N: W, S: E}[d]
        gate_names = side[d]
        drawn_names = side[drawn_dir]
        used = [n for n in square_order
                if n in gate_names or n in drawn_names]
        hyp = tuple(n for n in used
                    if not (n in gate_names and n in drawn_names))
        return {
            "corners": [corners[n] for n in used],
            "drawn": [seg(drawn_names)],
            "ground": [seg(hyp)],
            "center": False,
        }
    if len(dset) == 2 and (N in dset) != (S in dset) and (E in dset) != (W in dset):
        # turn cell: fully gated square, two sides toward tubes and two
        # ground gates toward the filler, plus the center blocking point
        ground = [seg(side[d]) for d in (N, E, S, W) if d not in dset]
        return {
            "corners": [corners[n] for n in square_order],
            "drawn": [],
            "ground": ground,
            "center": True,
        }
    # straight or junction cell: square; closed sides continue the
    # neighboring tube walls collinearly, so drawing them is safe
    drawn = [seg(side[d]) for d in (N, E, S, W) if d not in dset]
    return {
        "corners": [corners[n] for n in square_order],
        "drawn": drawn,
        "ground": [],
        "center": False,
    }


# -- filler tiling -----------------------------------------------------------

def _clip(poly: list[Point], a: Point, b: Point) -> list[Point]:
    """Clip a convex polygon to the closed half-plane left of a->b."""
    out: list[Point] = []
    n = len(poly)
    for k in range(n):
        p, q = poly[k], poly[(k + 1) % n]
        sp = orient(a, b, p)
        sq = orient(a, b, q)
        if sp >= 0:
            out.append(p)
        if sp * sq < 0:
            t = _line_param(a, b, p, q)
            out.append(Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t))
    # drop duplicates introduced by touching vertices
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if dedup and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _line_param(a, b, p, q) -> Fraction:
    denom = ((b.x - a.x) * (q.y - p.y) - (b.y - a.y) * (q.x - p.x))
    num = ((b.x - a.x) * (a.y - p.y) - (b.y - a.y) * (a.x - p.x))
    return num / denom


def _convex_difference(piece: list[Point], coin: list[Point]) -> list[list[Point]]:
    """piece minus a convex coin, as disjoint convex polygons."""
    if len(piece) < 3:
        return []
    coin_ccw = coin if signed_area_of(coin) > 0 else list(reversed(coin))
    out = []
    current = piece
    m = len(coin_ccw)
    for k in range(m):
        a, b = coin_ccw[k], coin_ccw[(k + 1) % m]
        outside = _clip(current, b, a)   # right of a->b
        if len(outside) >= 3 and abs(signed_area_of(outside)) > 0:
            out.append(outside)
        current = _clip(current, a, b)
        if len(current) < 3:
            break
    return out


def _grey_tiles(lo: Point, hi: Point, coin_polys, u) -> list[list[Point]]:
    tiles = []
    x = lo.x
    while x < hi.x:
        y = lo.y
        while y < hi.y:
            square = [Point(x, y), Point(x + u, y),
                      Point(x + u, y + u), Point(x, y + u)]
            pieces = [square]
            for coin in coin_polys:
                nxt = []
                for p in pieces:
                    nxt.extend(_convex_difference(p, coin))
                pieces = nxt
                if not pieces:
                    break
            tiles.extend(pieces)
            y += u
        x += u
    return _merge_tiles(tiles, u)


def _is_unit_square(tile, u) -> bool:
    if len(tile) != 4:
        return False
    xs = sorted({p.x for p in tile})
    ys = sorted({p.y for p in tile})
    return (len(xs) == 2 and len(ys) == 2
            and xs[1] - xs[0] == u and ys[1] - ys[0] == u)


def _merge_tiles(tiles, u) -> list[list[Point]]:
    """Merge unit filler squares into maximal rectangles (rows, then
    columns); non-square slivers pass through unchanged."""
    squares = {}
    rest = []
    for tile in tiles:
        if _is_unit_square(tile, u):
            x = min(p.x for p in tile)
            y = min(p.y for p in tile)
            squares[(x, y)] = True
        else:
            rest.append(tile)
    rows = {}
    for x, y in sorted(squares):
        run = rows.get((x - u, y))
        if run is not None:
            rows.pop((x - u, y))
            rows[(x, y)] = (run[0], y)
        else:
            rows[(x, y)] = (x, y)
    rects = {}
    for (x1, y), (x0, _) in sorted(rows.items(), key=lambda kv: (kv[1][0], kv[0][1])):
        below = rects.get((x0, x1, y - u))
        if below is not None:
            rects.pop((x0, x1, y - u))
            rects[(x0, x1, y)] = below
        else:
            rects[(x0, x1, y)] = y
    out = list(rest)
    for (x0, x1, y1), y0 in rects.items():
        out.append([Point(x0, y0), Point(x1 + u, y0),
                    Point(x1 + u, y1 + u), Point(x0, y1 + u)])
    return out


def _assign_tiles(tiles, s_b: Rat) -> list[ScoredRegion]:
    regions = []
    need = s_b
    for tile in tiles:
        ccw = tile if signed_area_of(tile) > 0 else list(reversed(tile))
        area = signed_area_of(ccw)
        if need <= 0:
            regions.append(_region(ccw, R, area))
            continue
        if area <= need:
            regions.append(_region(ccw, B, area))
            need -= area
            continue
        left, right = _split_tile(ccw, need)
        regions.append(_region(left, B, signed_area_of(left)))
        regions.append(_region(right, R, signed_area_of(right)))
        need = Fraction(0)
    return regions


def _region(poly, owner, area):
    return ScoredRegion(boundary=tuple(poly), holes=(), owner=owner, area=area)


def _split_tile(poly: list[Point], want: Rat):
    """Split a convex polygon into two convex parts, the first with the
    requested area, by a cut through the first vertex."""
    total = signed_area_of(poly)
    apex = poly[0]
    acc = Fraction(0)
    for k in range(1, len(poly) - 1):
        tri = Fraction(1, 2) * abs(
            (poly[k].x - apex.x) * (poly[k + 1].y - apex.y)
            - (poly[k].y - apex.y) * (poly[k + 1].x - apex.x))
        if acc + tri >= want:
            t = (want - acc) / tri
            cut = Point(poly[k].x + (poly[k + 1].x - poly[k].x) * t,
                        poly[k].y + (poly[k + 1].y - poly[k].y) * t)
            left = [apex] + poly[1:k + 1] + ([cut] if cut != poly[k] else [])
            right = [apex] + ([cut] if cut != poly[k + 1] else []) \
                + poly[k + 1:]
            return left, right
        acc += tri
    raise GeometryError("split target exceeds the tile area")


def audit_no_instant_score(board: PolygonBoard) -> list:
    """Every legal move of the fresh board must score nothing: the mover is
    forced to open a structure. Returns offending moves (expected empty)."""
    from ..polygons import apply_move_core
    bad = []
    for move in legal_moves(board.state):
        _, scored, _ = apply_move_core(board.state, *move)
        if scored > 0:
            bad.append((move, scored))
    return bad
