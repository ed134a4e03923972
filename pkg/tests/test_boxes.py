import random

import pytest

from dotspolygons.boxes import (B, R, W, BoxesError, EndgameDecomposition,
                                NotSettled, OpenedStructure,
                                UnsupportedDecomposition, all_walls,
                                board_from_json, board_to_json, boxes_apply,
                                boxes_legal_moves, boxes_minimax, cell_walls,
                                controlled_scores, decompose_endgame,
                                double_cross_walls, make_board, new_board,
                                parse_board, render_board, validate_board)
from dotspolygons.strategy import TakeAllSignal, double_cross_move


def walled_corridor(cells, ground_ends=False):
    """Settled board: the given cells form a corridor, everything else is
    boundary wall. ground_ends opens one off-board wall at each end cell so
    the chain is closed (2 openings per cell) instead of free."""
    from dotspolygons.boxes import wall_cells
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    width, height = max(xs) + 1, max(ys) + 1
    links = set()
    for a, b in zip(cells, cells[1:]):
        links.add(frozenset((a, b)))
    walls = set()
    for w in all_walls(width, height):
        touching = [c for c in wall_cells(w, width, height) if c in cells]
        if len(touching) == 2 and frozenset(touching) in links:
            continue
        walls.add(w)
    if ground_ends:
        for end, neighbor in ((cells[0], cells[1]), (cells[-1], cells[-2])):
            for w in cell_walls(end):
                off_board = len(wall_cells(w, width, height)) == 1
                if off_board and w in walls:
                    walls.discard(w)
                    break
    claimed = {c: W for c in
               [(x, y) for x in range(width) for y in range(height)]
               if c not in cells}
    return make_board(width, height, walls, claimed, validate=False)


def test_legal_moves_counts():
    board = new_board(1, 1)
    assert len(boxes_legal_moves(board)) == 4
    for w in [("h", 0, 0), ("v", 0, 0), ("v", 1, 0)]:
        board, completed, extra = boxes_apply(board, w)
        assert completed == 0
    assert len(boxes_legal_moves(board)) == 1


def test_apply_completion_and_extra_turn():
    board = new_board(2, 1)
    seq = [("h", 0, 0), ("h", 0, 1), ("v", 0, 0)]
    for w in seq:
        board, completed, _ = boxes_apply(board, w)
        assert completed == 0
    mover = board.to_move
    board, completed, extra = boxes_apply(board, ("v", 1, 0))
    assert completed == 1 and extra
    assert board.to_move == mover
    assert board.score_of(mover) == 1


def test_apply_double_completion():
    board = new_board(2, 1)
    for w in [("h", 0, 0), ("h", 0, 1), ("v", 0, 0),
              ("h", 1, 0), ("h", 1, 1), ("v", 2, 0)]:
        board, _, _ = boxes_apply(board, w)
    board, completed, extra = boxes_apply(board, ("v", 1, 0))
    assert completed == 2
    assert not extra  # board is full


def test_apply_rejects_duplicate():
    board, _, _ = boxes_apply(new_board(1, 1), ("h", 0, 0))
    with pytest.raises(BoxesError):
        boxes_apply(board, ("h", 0, 0))


def test_decompose_straight_corridor():
    cells = [(x, 0) for x in range(5)]
    board = walled_corridor(cells)
    d = decompose_endgame(board)
    assert d.n_chains == 1 and d.n_cycles == 0
    assert d.n_unclaimed == 5
    assert d.chains[0] == tuple(cells)


def test_decompose_four_cell_loop():
    cells = [(0, 0), (1, 0), (1, 1), (0, 1)]
    board = walled_corridor(cells + [cells[0]][:0])
    # close the loop: also open the wall between (0,1) and (0,0)
    walls = set(board.walls)
    walls.discard(("h", 0, 1))
    board = make_board(board.width, board.height, walls, board.claimed,
                       validate=False)
    d = decompose_endgame(board)
    assert d.n_cycles == 1 and d.n_chains == 0
    assert d.n_unclaimed == 4


def test_decompose_rejects_junction():
    cells = [(0, 1), (1, 1), (2, 1), (1, 0), (1, 2)]
    board = walled_corridor([(0, 1), (1, 1), (2, 1)])
    walls = set(board.walls)
    # give (1,1) two extra openings: not settled
    walls.discard(("h", 1, 1))
    walls.discard(("h", 1, 2))
    claimed = dict(board.claimed)
    claimed.pop((1, 0), None)
    claimed.pop((1, 2), None)
    board = make_board(board.width, board.height, walls, claimed, validate=False)
    with pytest.raises(NotSettled):
        decompose_endgame(board)


def test_controlled_scores_formulas():
    d = EndgameDecomposition(
        chains=(((0, 0),),) * 2,
        cycles=(((1, 1),),))
    # S_B=3, N_chains=2, N_cycles=1 -> 3 + 2 + 4 = 9
    s_b, s_r = controlled_scores(3, 0, d)
    assert s_b == 9
    single = EndgameDecomposition(chains=(tuple((x, 0) for x in range(7)),),
                                  cycles=())
    s_b, s_r = controlled_scores(0, 0, single)
    assert (s_b, s_r) == (0, 7)


def test_controlled_scores_requires_chain():
    d = EndgameDecomposition(chains=(), cycles=(((0, 0), (1, 0)),))
    with pytest.raises(UnsupportedDecomposition):
        controlled_scores(0, 0, d)


def test_controlled_scores_sum_identity_random():
    rng = random.Random(17)
    for _ in range(200):
        n_chains = rng.randint(1, 5)
        n_cycles = rng.randint(0, 4)
        chains = tuple(tuple((i, k) for i in range(rng.randint(1, 6)))
                       for k in range(n_chains))
        cycles = tuple(tuple((i, 10 + k) for i in range(rng.randint(4, 8)))
                       for k in range(n_cycles))
        d = EndgameDecomposition(chains=chains, cycles=cycles)
        s_b, s_r = rng.randint(0, 30), rng.randint(0, 30)
        fb, fr = controlled_scores(s_b, s_r, d)
        assert fb + fr == s_b + s_r + d.n_unclaimed


def test_minimax_1x1():
    margin, move = boxes_minimax(new_board(1, 1))
    assert margin == -1  # second player takes the box
    board = new_board(1, 1)
    board, _, _ = boxes_apply(board, ("h", 0, 0))
    board, _, _ = boxes_apply(board, ("h", 0, 1))
    margin, _ = boxes_minimax(board)
    assert margin == -1


def test_minimax_full_board():
    board = new_board(1, 1)
    for w in all_walls(1, 1):
        if w not in board.walls:
            board, _, _ = boxes_apply(board, w)
    margin, move = boxes_minimax(board)
    assert margin == 0 and move is None


def test_minimax_bound_refusal():
    with pytest.raises(BoxesError):
        boxes_minimax(new_board(5, 5), bound=10)


def test_double_cross_chain():
    cells = [(x, 0) for x in range(5)]
    board = walled_corridor(cells, ground_ends=True)
    # opponent opens the chain at the first cell's ground opening
    shared = set(cell_walls(cells[0])) & set(cell_walls(cells[1]))
    ground = [w for w in board.missing_walls(cells[0]) if w not in shared][0]
    board, _, _ = boxes_apply(board, ground)
    seq = double_cross_move(board, OpenedStructure(kind="chain",
                                                   cells=tuple(cells)))
    state = board
    claimed_before = state.score_of(state.to_move)
    for wall in seq[:-1]:
        state, completed, extra = boxes_apply(state, wall)
        assert extra
    mover = state.to_move
    state, completed, _ = boxes_apply(state, seq[-1])
    assert completed == 0  # declining move scores nothing
    assert state.to_move != mover
    assert state.score_of(mover) - claimed_before == 3  # claimed 3 of 5
    # opponent now takes the domino with a single wall
    domino_walls = [w for w in boxes_legal_moves(state) if w not in state.walls]
    assert len(domino_walls) == 1
    state, completed, _ = boxes_apply(state, domino_walls[0])
    assert completed == 2


def test_double_cross_cycle():
    cells = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1)]
    board = walled_corridor(cells)
    walls = set(board.walls)
    walls.discard(("h", 0, 1))  # close the loop between (0,1) and (0,0)
    board = make_board(board.width, board.height, walls, board.claimed,
                       validate=False, to_move=B)
    d = decompose_endgame(board)
    assert d.n_cycles == 1 and len(d.cycles[0]) == 6
    # B opens the cycle
    board, completed, _ = boxes_apply(board, ("h", 0, 1))
    assert completed == 0
    seq = double_cross_move(board, OpenedStructure(kind="cycle",
                                                   cells=tuple(cells)))
    state = board
    mover = state.to_move
    for wall in seq[:-1]:
        state, completed, extra = boxes_apply(state, wall)
    state, completed, _ = boxes_apply(state, seq[-1])
    assert completed == 0
    assert state.score_of(mover) == 2  # claimed 2, declined 4
    remaining = [c for c in cells if c not in state.claimed]
    assert len(remaining) == 4


def test_double_cross_too_short_signals_take_all():
    cells = [(0, 0), (1, 0)]
    board = walled_corridor(cells, ground_ends=True)
    shared = set(cell_walls(cells[0])) & set(cell_walls(cells[1]))
    ground = [w for w in board.missing_walls(cells[0]) if w not in shared][0]
    board, _, _ = boxes_apply(board, ground)
    with pytest.raises(TakeAllSignal):
        double_cross_move(board, OpenedStructure(kind="chain",
                                                 cells=((0, 0),)))


def test_render_parse_round_trip():
    board = new_board(3, 2)
    rng = random.Random(5)
    walls = rng.sample(all_walls(3, 2), 9)
    for w in walls:
        board, _, _ = boxes_apply(board, w)
    text = render_board(board)
    back = parse_board(text)
    assert back.walls == board.walls
    assert back.width == board.width and back.height == board.height


def test_json_round_trip():
    board = make_board(2, 2, [("h", 0, 0), ("v", 1, 1)], {(1, 1): W},
                       validate=False)
    back = board_from_json(board_to_json(board))
    assert back.walls == board.walls
    assert back.claimed == board.claimed


def test_box_conservation_random_playout():
    rng = random.Random(23)
    board = new_board(2, 2)
    while boxes_legal_moves(board):
        board, _, _ = boxes_apply(board, rng.choice(boxes_legal_moves(board)))
    assert board.score_r + board.score_b == 4
    validate_board(board)


def test_decomposition_matches_independent_dfs():
    # independent recount of the dual graph on a mixed board
    cells_chain = [(x, 0) for x in range(4)]
    cells_cycle = [(0, 2), (1, 2), (1, 3), (0, 3)]
    board = walled_corridor(cells_chain + cells_cycle)
    walls = set(board.walls)
    walls.discard(("v", 1, 2))
    walls.add(("v", 4, 2))  # separate structures (already separate)
    # punch the loop closed
    from dotspolygons.boxes import wall_cells
    for w in list(walls):
        touching = [c for c in wall_cells(w, board.width, board.height)
                    if c in cells_cycle]
        if len(touching) == 2:
            walls.discard(w)
    claimed = dict(board.claimed)
    board = make_board(board.width, board.height, walls, claimed,
                       validate=False)
    d = decompose_endgame(board)
    assert d.n_chains == 1 and d.n_cycles == 1
    assert d.n_unclaimed == 8
    seen = set()
    for group in d.chains + d.cycles:
        for c in group:
            assert c not in seen
            seen.add(c)
    assert seen == set(cells_chain + cells_cycle)
