import random
from fractions import Fraction

import pytest

from dotspolygons.geometry import GeometryError, hull_area, pt
from dotspolygons.polygons import (B, HOLES, R, SIMPLE, MoveError, apply_move,
                                   is_terminal, legal_moves, new_game,
                                   state_from_json, state_to_json,
                                   validate_state, winner)

TRI = [pt(0, 0), pt(1, 0), pt(0, 1)]
SQ = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]


def play(state, *moves):
    outcome = None
    for m in moves:
        state, outcome = apply_move(state, *m)
    return state, outcome


def test_new_game_fresh():
    s = new_game(SQ, SIMPLE)
    assert s.edges == frozenset() and s.to_move == R
    assert s.score_r == 0 and s.score_b == 0


def test_new_game_collinear_rejected():
    with pytest.raises(GeometryError):
        new_game([pt(0, 0), pt(1, 0), pt(2, 0)], SIMPLE)


def test_new_game_duplicates_rejected():
    with pytest.raises(GeometryError):
        new_game([pt(0, 0), pt(1, 0), pt(0, 0)], HOLES)


def test_fresh_triangle_has_three_moves():
    assert len(legal_moves(new_game(TRI, SIMPLE))) == 3


def test_crossing_diagonal_excluded():
    s = new_game(SQ, SIMPLE)
    s, _ = apply_move(s, 0, 2)
    assert (1, 3) not in legal_moves(s)
    with pytest.raises(MoveError) as err:
        apply_move(s, 1, 3)
    assert err.value.reason == "crossing"


def test_duplicate_rejected():
    s, _ = play(new_game(SQ, SIMPLE), (0, 1))
    with pytest.raises(MoveError) as err:
        apply_move(s, 0, 1)
    assert err.value.reason == "duplicate"


def test_through_point_rejected():
    pts = SQ + [pt("1/2", "1/2")]
    s = new_game(pts, SIMPLE)
    with pytest.raises(MoveError) as err:
        apply_move(s, 0, 2)  # diagonal passes through the center point
    assert err.value.reason == "through-point"


def test_triangle_full_playout():
    s = new_game(TRI, SIMPLE)
    s, o1 = apply_move(s, 0, 1)
    assert o1.scored == 0 and s.to_move == B
    s, o2 = apply_move(s, 1, 2)
    assert o2.scored == 0 and s.to_move == R
    s, o3 = apply_move(s, 0, 2)
    assert o3.scored == Fraction(1, 2)
    assert o3.game_over and not o3.extra_turn
    assert is_terminal(s)
    assert s.score_r == Fraction(1, 2) and s.score_b == 0
    assert winner(s) == R


def test_first_square_edge_scores_nothing():
    s, o = play(new_game(SQ, HOLES), (0, 1))
    assert o.scored == 0 and s.to_move == B


def test_winner_requires_terminal():
    with pytest.raises(ValueError):
        winner(new_game(TRI, SIMPLE))


def test_simple_closing_nonscoring_cycle_passes_turn():
    # square with centre point: closing the square scores nothing (point
    # inside) and the turn must pass
    pts = SQ + [pt("1/3", "1/3")]
    s = new_game(pts, SIMPLE)
    s, _ = play(s, (0, 1), (1, 2), (2, 3))
    mover = s.to_move
    s, o = apply_move(s, 3, 0)
    assert o.scored == 0
    assert s.to_move != mover


def test_holes_vs_simple_outer_cycle_contrast():
    # Outer square enclosing an already-scored inner triangle. Closing the
    # outer cycle scores (square - triangle) under Holes and nothing under
    # Simple.
    pts = [pt(0, 0), pt(6, 0), pt(6, 6), pt(0, 6),
           pt(2, 2), pt(4, 2), pt(3, 4)]
    inner = [(4, 5), (5, 6), (4, 6)]
    outer = [(0, 1), (1, 2), (2, 3), (0, 3)]

    def play_all(variant):
        s = new_game(pts, variant)
        outcomes = []
        for m in inner + outer:
            s, o = apply_move(s, *m)
            outcomes.append(o)
        return s, outcomes

    s_holes, out_holes = play_all(HOLES)
    tri_area = Fraction(2)  # base 2, height 2
    assert out_holes[2].scored == tri_area
    assert out_holes[-1].scored == 36 - tri_area
    last_region = out_holes[-1].new_regions[0]
    assert len(last_region.holes) == 1

    s_simple, out_simple = play_all(SIMPLE)
    assert out_simple[2].scored == tri_area
    assert out_simple[-1].scored == 0


def test_holes_split_of_enclosed_face_scores_nothing():
    # close a big triangle, then draw a chord inside: chord is illegal since
    # the interior is scored territory under Holes
    pts = [pt(0, 0), pt(4, 0), pt(0, 4), pt(2, 0)]
    s = new_game(pts, HOLES)
    s, o = play(s, (0, 3), (3, 1), (1, 2), (0, 2))
    assert o.scored == 8
    assert is_terminal(s)


def test_state_json_round_trip():
    s, _ = play(new_game(SQ, SIMPLE), (0, 1), (1, 2), (0, 3))
    data = state_to_json(s)
    back = state_from_json(data)
    assert back.edges == s.edges
    assert back.score_r == s.score_r and back.score_b == s.score_b
    assert back.to_move == s.to_move and back.variant == s.variant


def random_playout(points, variant, seed):
    rng = random.Random(seed)
    s = new_game(points, variant)
    turns = 0
    last_player = None
    while True:
        moves = legal_moves(s)
        if not moves:
            break
        if s.to_move != last_player:
            turns += 1
            last_player = s.to_move
        s, _ = apply_move(s, *rng.choice(moves))
    return s, turns


def convex_points(n, seed):
    # rational points on a circle via the tangent half-angle map
    rng = random.Random(seed)
    ts = sorted(rng.sample(range(-60, 60), n))
    pts = []
    for k in ts:
        t = Fraction(k, 17)
        pts.append(pt(Fraction(1 - t * t, 1) / (1 + t * t),
                      Fraction(2 * t, 1) / (1 + t * t)))
    return pts


@pytest.mark.parametrize("variant", [HOLES, SIMPLE])
def test_conservation_random_playouts(variant):
    for seed in range(6):
        pts = convex_points(6, seed + 40)
        s, _ = random_playout(pts, variant, seed)
        assert s.score_r + s.score_b == hull_area(pts)
        validate_state(s)


@pytest.mark.parametrize("variant", [HOLES, SIMPLE])
def test_turn_count_on_convex_positions(variant):
    for n in (3, 4, 5, 6):
        pts = convex_points(n, n * 13 + 1)
        _, turns = random_playout(pts, variant, n)
        assert turns == n


def test_nonconvex_point_set_playout_conserves():
    pts = [pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4), pt(2, 1), pt(1, 2)]
    for seed in range(4):
        s, _ = random_playout(pts, HOLES, seed)
        assert s.score_r + s.score_b == hull_area(pts)
