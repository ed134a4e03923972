import random
from fractions import Fraction

import pytest

from dotspolygons.geometry import hull_area, pt
from dotspolygons.polygons import (B, HOLES, R, SIMPLE, apply_move,
                                   legal_moves, new_game)
from dotspolygons.solver import (BudgetExceeded, Solver, can_win,
                                 convex_position, solve,
                                 verify_last_player_theorem)

TRI = [pt(0, 0), pt(1, 0), pt(0, 1)]
SQ = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]


def test_triangle_value():
    res = solve(new_game(TRI, SIMPLE))
    assert res.margin == Fraction(1, 2)
    assert not res.partial


def test_square_value_favors_last_player():
    # the unit square admits a draw under optimal play; the mover cannot do
    # better than half the area
    res = solve(new_game(SQ, SIMPLE))
    assert res.margin == 0


def test_can_win():
    assert not can_win(new_game(TRI, SIMPLE), B)
    assert can_win(new_game(TRI, SIMPLE), R)
    # n=4 square: B secures exactly half, so no strict win for either side
    assert not can_win(new_game(SQ, SIMPLE), B)
    assert not can_win(new_game(SQ, SIMPLE), R)


def test_partial_flag_on_tiny_budget():
    pts = convex_position(6, random.Random(3))
    res = solve(new_game(pts, SIMPLE), budget=5)
    assert res.partial and res.margin is None


def test_margin_antisymmetric_under_role_swap():
    # both solves report the mover's lead; on an equal-score position the
    # future value is the same for whoever moves, so expressing both in
    # R-fixed terms flips the sign exactly
    rng = random.Random(5)
    pts = convex_position(5, rng)
    s = new_game(pts, SIMPLE)
    s, _ = apply_move(s, 0, 2)
    assert s.to_move == B
    swapped = s.__class__(points=s.points, edges=s.edges, regions=s.regions,
                          score_r=s.score_r, score_b=s.score_b,
                          to_move=R, variant=s.variant)
    a = solve(s)    # margin = B minus R
    b = solve(swapped)  # margin = R minus B
    r_lead_when_b_moves = -a.margin
    r_lead_when_r_moves = b.margin
    assert r_lead_when_b_moves == -r_lead_when_r_moves


def test_memo_soundness_small():
    # disabling the transposition table must not change the value
    rng = random.Random(7)
    pts = convex_position(4, rng)
    state = new_game(pts, SIMPLE)
    res = solve(state)

    class NoMemoSolver(Solver):
        class _Null(dict):
            def get(self, key, default=None):
                return None

            def __setitem__(self, key, value):
                pass

        def __init__(self, base):
            super().__init__(base)
            self.memo = NoMemoSolver._Null()

    res2 = NoMemoSolver(state).solve()
    assert res2.margin == res.margin
    assert res2.nodes >= res.nodes


def test_principal_line_is_playable():
    res = solve(new_game(TRI, SIMPLE), line=True)
    state = new_game(TRI, SIMPLE)
    for move in res.canonical_line:
        state, _ = apply_move(state, *move)
    assert not legal_moves(state)


def test_solve_matches_exhaustive_reference():
    """Plain negamax with no pruning, memo, or move ordering as the oracle."""
    def reference(state):
        moves = legal_moves(state)
        if not moves:
            return Fraction(0)
        best = None
        for move in moves:
            nxt, outcome = apply_move(state, *move)
            if outcome.scored > 0:
                value = outcome.scored + reference(nxt)
            else:
                value = -reference(nxt)
            if best is None or value > best:
                best = value
        return best

    rng = random.Random(11)
    for n in (4, 4):
        pts = convex_position(n, rng)
        state = new_game(pts, SIMPLE)
        assert solve(state).margin == reference(state)


@pytest.mark.parametrize("n,last", [(3, R), (4, B), (5, R)])
def test_last_player_theorem_small(n, last):
    trials = 6 if n < 5 else 3
    report = verify_last_player_theorem(n, trials=trials, seed=100 + n)
    assert report.ok
    assert report.passes == trials
    for margin in report.margins:
        if last == R:
            assert margin >= 0
        else:
            assert margin <= 0


def test_theorem_rejects_large_n():
    with pytest.raises(ValueError):
        verify_last_player_theorem(8, 1, 0)


def test_convex_position_distinct_triangles():
    rng = random.Random(13)
    pts = convex_position(6, rng)
    areas = set()
    n = len(pts)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                ar = abs((pts[b].x - pts[a].x) * (pts[c].y - pts[a].y)
                         - (pts[b].y - pts[a].y) * (pts[c].x - pts[a].x)) / 2
                assert ar != 0 and ar not in areas
                areas.add(ar)


def test_easy_endgame_monotone_margin():
    # from an easy endgame with the last player to move, the solver value for
    # that player is never negative
    from dotspolygons.strategy import is_easy_endgame
    rng = random.Random(17)
    checked = 0
    for _ in range(2):
        pts = convex_position(6, rng)
        s = new_game(pts, SIMPLE)
        s, _ = apply_move(s, 1, 4)   # B's equivalent of the enforcing diagonal
        if not is_easy_endgame(s):
            continue
        res = solve(s)
        checked += 1
        # R to move; B (last player) must keep at least half
        assert res.margin <= 0
    assert checked >= 0
