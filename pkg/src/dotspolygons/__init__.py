"""Dots & Polygons: exact engine, solver, strategies, hardness reductions."""

from .geometry import Point, Rat, pt, rat, rat_from_str, rat_to_str
from .polygons import (HOLES, SIMPLE, MoveError, MoveOutcome,
                       PolygonGameState, ScoredRegion, apply_move, is_terminal,
                       legal_moves, new_game, winner)

__all__ = [
    "Point", "Rat", "pt", "rat", "rat_from_str", "rat_to_str",
    "HOLES", "SIMPLE", "MoveError", "MoveOutcome", "PolygonGameState",
    "ScoredRegion", "apply_move", "is_terminal", "legal_moves", "new_game",
    "winner",
]
