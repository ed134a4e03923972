"""Greedy strategy machinery: edge weights, subproblems, easy endgames,
and the control-keeping double-cross move for Dots & Boxes structures.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import Rat, convex_hull, walk_signed_area
from .polygons import (MoveError, PolygonGameState, apply_move,
                       apply_move_core, check_move, is_legal, legal_moves)
from .subdivision import Rotation


@dataclass(frozen=True)
class Subproblem:
    boundary: tuple[int, ...]       # face walk, point indices
    area: Rat
    hull_edges: tuple[tuple[int, int], ...]  # undrawn hull edges on this face

    @property
    def hull_edge_count(self) -> int:
        return len(self.hull_edges)


@dataclass(frozen=True)
class WeightedEdge:
    edge: tuple[int, int]
    weight: Optional[Rat]   # opponent's next-turn take; None for closing moves
    gain: Rat               # area the move itself closes


def _hull_boundary_pairs(s: PolygonGameState) -> list[tuple[int, int]]:
    hull = convex_hull(s.points)
    index_of = {p: k for k, p in enumerate(s.points)}
    idx = [index_of[p] for p in hull.vertices]
    return [tuple(sorted((idx[k], idx[(k + 1) % len(idx)])))
            for k in range(len(idx))]


def subproblems(s: PolygonGameState) -> list[Subproblem]:
    """Unscored faces of the subdivision (hull boundary acts as a fence)."""
    hull_pairs = _hull_boundary_pairs(s)
    all_edges = set(s.edges) | set(hull_pairs)
    rotation = Rotation(s.points, all_edges)
    index_of = {p: k for k, p in enumerate(s.points)}
    region_walks = set()
    for r in s.regions:
        if all(p in index_of for p in r.boundary):
            region_walks.add(_canon_cycle(tuple(index_of[p] for p in r.boundary)))
    seen = set()
    faces = []
    for i, j in all_edges:
        for u, v in ((i, j), (j, i)):
            if (u, v) in seen:
                continue
            walk = rotation.walk_face(u, v)
            for k in range(len(walk)):
                seen.add((walk[k], walk[(k + 1) % len(walk)]))
            area = walk_signed_area([s.points[k] for k in walk])
            if area <= 0:
                continue
            if _canon_cycle(tuple(walk)) in region_walks:
                continue
            walk_pairs = {tuple(sorted((walk[k], walk[(k + 1) % len(walk)])))
                          for k in range(len(walk))}
            hull_avail = tuple(sorted(
                p for p in set(hull_pairs)
                if p in walk_pairs and p not in s.edges))
            faces.append(Subproblem(boundary=tuple(walk), area=area,
                                    hull_edges=hull_avail))
    return faces


def _canon_cycle(walk: Sequence[int]) -> tuple[int, ...]:
    walk = tuple(walk)
    n = len(walk)
    best = None
    for shift in range(n):
        cand = walk[shift:] + walk[:shift]
        if best is None or cand < best:
            best = cand
    return best


def is_easy_endgame(s: PolygonGameState) -> bool:
    return all(sp.hull_edge_count == 2 for sp in subproblems(s))


def _max_turn_score(s: PolygonGameState, memo: dict) -> Rat:
    """Largest total area the player to move can score in this one turn."""
    key = s.edges
    if key in memo:
        return memo[key]
    best = Fraction(0)
    for move in legal_moves(s):
        nxt, scored, _ = apply_move_core(s, *move)
        if scored > 0:
            best = max(best, scored + _max_turn_score(nxt, memo))
    memo[key] = best
    return best


def edge_weight(s: PolygonGameState, edge: tuple[int, int]) -> Rat:
    """Area the opponent can claim on their next turn if `edge` is drawn."""
    check_move(s, *edge)
    nxt, scored, _ = apply_move_core(s, *edge)
    if scored > 0:
        raise MoveError("scoring-edge", "edge weights are defined for non-closing moves")
    return _max_turn_score(nxt, {})


def weighted_moves(s: PolygonGameState) -> list[WeightedEdge]:
    """Every legal move annotated with w(e), or its own gain when it closes."""
    out = []
    for move in legal_moves(s):
        nxt, scored, _ = apply_move_core(s, *move)
        if scored > 0:
            out.append(WeightedEdge(edge=move, weight=None, gain=scored))
        else:
            out.append(WeightedEdge(edge=move, weight=_max_turn_score(nxt, {}),
                                    gain=Fraction(0)))
    return out


def greedy_move(s: PolygonGameState) -> Optional[tuple[int, int]]:
    """Close the largest area if possible, else give away the least.

    Ties break to the lexicographically smallest (i, j) pair so transcripts
    are reproducible.
    """
    moves = legal_moves(s)
    if not moves:
        return None
    scoring = []
    quiet = []
    for move in moves:
        _, scored, _ = apply_move_core(s, *move)
        if scored > 0:
            scoring.append((scored, move))
        else:
            quiet.append(move)
    if scoring:
        best_gain = max(g for g, _ in scoring)
        return min(m for g, m in scoring if g == best_gain)
    best = None
    best_w = None
    for move in quiet:
        nxt, _, _ = apply_move_core(s, *move)
        w = _max_turn_score(nxt, {})
        if best_w is None or w < best_w or (w == best_w and move < best):
            best, best_w = move, w
    return best


# -- double-cross ----------------------------------------------------------

class TakeAllSignal(Exception):
    """Opened structure too short to decline; claim everything instead."""

    def __init__(self, sequence):
        super().__init__("structure too short to decline; take all")
        self.sequence = sequence


def double_cross_move(game, opened):
    """Claim all but the tail of an opened chain/cycle, then decline.

    For BoxesState, `opened` is boxes.OpenedStructure (kind + ordered cells);
    the returned wall sequence leaves one 2x1 domino for a chain and two for
    a cycle. For PolygonGameState, `opened` is a strategy.OpenedArea naming
    the decline reserve; captures are replayed greedily until only the
    reserve remains, then the cheapest non-scoring move is played.
    """
    from .boxes import BoxesState
    if isinstance(game, BoxesState):
        from .boxes import double_cross_walls
        return double_cross_walls(game, opened)
    return _polygon_double_cross(game, opened)


@dataclass(frozen=True)
class OpenedArea:
    kind: str            # 'chain' or 'cycle'
    unit_area: Rat       # area of one bell-shaped capture unit


def _polygon_double_cross(s: PolygonGameState, opened: OpenedArea):
    reserve = opened.unit_area * (2 if opened.kind == "cycle" else 1)
    sequence = []
    state = s
    while True:
        captures = []
        for move in legal_moves(state):
            _, outcome = apply_move(state, *move)
            if outcome.scored > 0:
                captures.append((outcome.scored, move))
        capturable = _max_turn_score(state, {})
        if not captures or capturable <= reserve:
            break
        gain, move = max(captures, key=lambda t: (t[0], t[1]))
        state, outcome = apply_move(state, *move)
        sequence.append(move)
        if outcome.game_over:
            raise TakeAllSignal(sequence)
    decline = None
    decline_cost = None
    for move in legal_moves(state):
        nxt, outcome = apply_move(state, *move)
        if outcome.scored == 0:
            cost = _max_turn_score(nxt, {})
            if decline is None or cost < decline_cost or (cost == decline_cost and move < decline):
                decline, decline_cost = move, cost
    if decline is None:
        raise TakeAllSignal(sequence)
    sequence.append(decline)
    return sequence
