"""Orthogonal embedding -> Dots & Boxes game state (the Theorem 2 board).

Every grid point of the fully subdivided embedding becomes a cell, open
exactly toward its route neighbors; all other lattice walls are drawn and
the remaining board is pre-claimed filler.
"""
from __future__ import annotations

from ..boxes import (B, W, BoxesState, all_walls, cell_walls, make_board,
                     wall_cells)
from .embedding import EmbeddingError, OrthogonalEmbedding, structure_cells


def vcp_to_boxes(e: OrthogonalEmbedding, s_b: int = 0, s_r: int = 0
                 ) -> BoxesState:
    """B to move; R in control: every legal wall opens a run of boxes."""
    cells, links = structure_cells(e)
    min_x = min(c[0] for c in cells)
    min_y = min(c[1] for c in cells)
    shifted = {(x - min_x, y - min_y) for x, y in cells}
    shifted_links = {frozenset(((a[0] - min_x, a[1] - min_y),
                                (b[0] - min_x, b[1] - min_y)))
                     for a, b in (tuple(l) for l in links)}
    width = max(c[0] for c in shifted) + 1
    height = max(c[1] for c in shifted) + 1
    walls = set()
    for w in all_walls(width, height):
        touching = [c for c in wall_cells(w, width, height) if c in shifted]
        if len(touching) == 2 and frozenset(touching) in shifted_links:
            continue
        walls.add(w)
    claimed = {(x, y): W
               for x in range(width) for y in range(height)
               if (x, y) not in shifted}
    board = make_board(width, height, walls, claimed,
                       score_r=s_r, score_b=s_b, to_move=B, validate=False)
    if len(board.unclaimed()) != len(cells):
        raise EmbeddingError("cell count mismatch after construction")
    return board


def control_holds(board: BoxesState) -> bool:
    """True iff every undrawn wall lets the opponent start claiming boxes,
    i.e. it reduces some unclaimed cell to a single missing wall."""
    from ..boxes import boxes_legal_moves
    for wall in boxes_legal_moves(board):
        frees = False
        for cell in wall_cells(wall, board.width, board.height):
            if cell in board.claimed:
                continue
            missing = [w for w in board.missing_walls(cell) if w != wall]
            if len(missing) == 1:
                frees = True
        if not frees:
            return False
    return True


def commit_packing(board: BoxesState, e: OrthogonalEmbedding,
                   cycles) -> BoxesState:
    """Draw the junction walls that cut every route not protected by the
    chosen vertex-disjoint cycles, which settles the board for
    decompose_endgame. Primarily an analysis helper for small fixtures."""
    cells, links = structure_cells(e)
    min_x = min(c[0] for c in cells)
    min_y = min(c[1] for c in cells)

    def cellify(p):
        return (p[0] - min_x, p[1] - min_y)

    keep = set()
    for cyc in cycles:
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            keep.add(frozenset((cellify(a), cellify(b))))
    walls = set(board.walls)
    for link in {frozenset((cellify(a), cellify(b)))
                 for a, b in (tuple(l) for l in links)}:
        a, b = tuple(link)
        junction = any(
            sum(1 for l2 in links
                if cellify(tuple(l2)[0]) == v or cellify(tuple(l2)[1]) == v) > 2
            for v in (a, b))
        if link not in keep and junction:
            shared = [w for w in cell_walls(a) if w in cell_walls(b)]
            walls.add(shared[0])
    return make_board(board.width, board.height, walls, board.claimed,
                      score_r=board.score_r, score_b=board.score_b,
                      to_move=board.to_move, validate=False)
