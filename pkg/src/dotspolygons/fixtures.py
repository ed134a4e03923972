"""Named boards used by tests, the CLI and the service."""
from __future__ import annotations

from functools import lru_cache

from .boxes import (B, W, BoxesState, all_walls, cell_walls, make_board,
                    wall_cells)
from .reductions.embedding import (OrthogonalEmbedding, fixture_embedding,
                                   fixture_names, make_embedding)
from .reductions.to_boxes import vcp_to_boxes
from .reductions.to_polygons import PolygonBoard, vcp_to_polygons


def settled_board(structures, width, height) -> BoxesState:
    """A controlled endgame: the given chains (with ground-string ends) and
    cycles are the only unclaimed cells, B to move. These are the positions
    the reduction's endgame reaches once junction commitments have resolved.
    """
    cells = [c for _, group in structures for c in group]
    links = set()
    grounds = []
    for kind, group in structures:
        pairs = list(zip(group, group[1:]))
        if kind == "cycle":
            pairs.append((group[-1], group[0]))
        for a, b in pairs:
            links.add(frozenset((a, b)))
        if kind == "chain":
            for end, nb in ((group[0], group[1]), (group[-1], group[-2])):
                shared = set(cell_walls(end)) & set(cell_walls(nb))
                for w in cell_walls(end):
                    if w in shared:
                        continue
                    if len(wall_cells(w, width, height)) == 1:
                        grounds.append(w)
                        break
                else:
                    raise ValueError(f"no off-board ground wall at {end}")
    walls = set()
    for w in all_walls(width, height):
        touching = [c for c in wall_cells(w, width, height) if c in cells]
        if len(touching) == 2 and frozenset(touching) in links:
            continue
        if w in grounds:
            continue
        walls.add(w)
    claimed = {(x, y): W for x in range(width) for y in range(height)
               if (x, y) not in cells}
    return make_board(width, height, walls, claimed, to_move=B,
                      validate=False)


CONTROL_BOARDS = {
    "chain5+cycle4": ([("chain", [(x, 0) for x in range(5)]),
                       ("cycle", [(0, 2), (1, 2), (1, 3), (0, 3)])], 5, 4),
    "chain5+chain4": ([("chain", [(x, 0) for x in range(5)]),
                       ("chain", [(x, 2) for x in range(4)])], 5, 3),
    "chain6": ([("chain", [(x, 0) for x in range(6)])], 6, 1),
    "chain2+chain2": ([("chain", [(0, 0), (1, 0)]),
                       ("chain", [(0, 2), (1, 2)])], 2, 3),
}


@lru_cache(maxsize=None)
def control_board(name: str) -> BoxesState:
    structures, width, height = CONTROL_BOARDS[name]
    return settled_board(structures, width, height)


def thm3_fixture_embedding() -> OrthogonalEmbedding:
    """The Theorem 3 acceptance board: a 4-cycle corridor loop plus a short
    disjoint chain. The chain makes keeping control worthwhile, so the
    double-cross on the cycle is optimal rather than taking everything."""
    return make_embedding(
        {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1),
         "p": (4, 0), "q": (6, 0)},
        {("a", "b"): [(0, 0), (1, 0)],
         ("b", "c"): [(1, 0), (1, 1)],
         ("c", "d"): [(1, 1), (0, 1)],
         ("d", "a"): [(0, 1), (0, 0)],
         ("p", "q"): [(4, 0), (6, 0)]})


def mini_ring_embedding() -> OrthogonalEmbedding:
    return make_embedding(
        {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)},
        {("a", "b"): [(0, 0), (1, 0)],
         ("b", "c"): [(1, 0), (1, 1)],
         ("c", "d"): [(1, 1), (0, 1)],
         ("d", "a"): [(0, 1), (0, 0)]})


@lru_cache(maxsize=None)
def polygon_fixture(name: str) -> PolygonBoard:
    if name == "thm3-4cycle":
        return vcp_to_polygons(thm3_fixture_embedding())
    if name == "thm3-ring":
        return vcp_to_polygons(mini_ring_embedding())
    if name == "thm3-edge":
        return vcp_to_polygons(make_embedding(
            {"a": (0, 0), "b": (2, 0)}, {("a", "b"): [(0, 0), (2, 0)]}))
    raise KeyError(name)


@lru_cache(maxsize=None)
def boxes_fixture(name: str) -> BoxesState:
    if name.startswith("thm2-"):
        return vcp_to_boxes(fixture_embedding(name.removeprefix("thm2-")))
    raise KeyError(name)


def fixture_catalog() -> list[dict]:
    out = [
        {"name": "thm3-4cycle", "kind": "polygons",
         "about": "corridor loop of 4 bells plus a companion chain"},
        {"name": "thm3-ring", "kind": "polygons",
         "about": "bare corridor loop of 4 bells"},
        {"name": "thm3-edge", "kind": "polygons",
         "about": "single corridor with 2 bells"},
    ]
    for name in fixture_names():
        out.append({"name": f"thm2-{name}", "kind": "boxes",
                    "about": f"Dots & Boxes board from the {name} embedding"})
    return out
