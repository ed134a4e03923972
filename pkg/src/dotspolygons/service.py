"""HTTP session service: play either game against the built-in AI.

In-memory sessions, per-session locking, optional JSON snapshot persistence.
The AI plays greedy or budget-capped exact search falling back to greedy.
"""
from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .geometry import Point, rat_from_str, rat_to_float, rat_to_str
from .polygons import (B, R, SIMPLE, MoveError, PolygonGameState, apply_move,
                       is_terminal, legal_moves, new_game, state_from_json,
                       state_to_json, winner)
from .solver import Solver, convex_position
from .strategy import greedy_move, weighted_moves
from . import fixtures as fixture_lib

GREEDY = "greedy"
SOLVER_CAPPED = "solver-capped"
AI_BUDGET = 200_000


@dataclass
class Session:
    id: str
    game: PolygonGameState
    initial: PolygonGameState
    ai_side: Optional[str]
    ai_policy: str
    move_log: list = field(default_factory=list)
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)
    solver: Optional[Solver] = None


class SessionStore:
    def __init__(self, ttl_seconds: float = 3600.0):
        self.sessions: dict[str, Session] = {}
        self.ttl = ttl_seconds
        self.lock = threading.Lock()

    def put(self, session: Session):
        with self.lock:
            self._evict()
            self.sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail={
                "code": "unknown-session", "message": f"no session {session_id}"})
        return session

    def _evict(self):
        cutoff = time.time() - self.ttl
        stale = [k for k, s in self.sessions.items() if s.updated < cutoff]
        for k in stale:
            del self.sessions[k]


class CreateRequest(BaseModel):
    kind: str = "polygons"
    variant: str = SIMPLE
    points: Optional[list] = None          # [[x, y], ...] rational strings
    preset: Optional[str] = None           # "square" | "random-n"
    fixture: Optional[str] = None
    seed: int = 0
    ai_side: Optional[str] = B
    ai_policy: str = GREEDY


class MoveRequest(BaseModel):
    move: list                             # [i, j]


def _error(status: int, code: str, message: str, detail=None):
    raise HTTPException(status_code=status, detail={
        "code": code, "message": message, "detail": detail})


def _build_state(req: CreateRequest) -> PolygonGameState:
    if req.fixture:
        try:
            return fixture_lib.polygon_fixture(req.fixture).state
        except KeyError:
            _error(400, "unknown-fixture", f"no fixture {req.fixture!r}")
    if req.points:
        try:
            pts = [Point(rat_from_str(str(x)), rat_from_str(str(y)))
                   for x, y in req.points]
            return new_game(pts, req.variant)
        except (ValueError, ArithmeticError) as err:
            _error(400, "invalid-points", str(err))
    preset = req.preset or "square"
    if preset == "square":
        pts = [Point(rat_from_str(v[0]), rat_from_str(v[1]))
               for v in (("0", "0"), ("1", "0"), ("1", "1"), ("0", "1"))]
        return new_game(pts, req.variant)
    if preset.startswith("random-"):
        import random
        n = int(preset.split("-", 1)[1])
        if not 3 <= n <= 9:
            _error(400, "invalid-preset", "random-n supports n = 3..9")
        pts = convex_position(n, random.Random(req.seed))
        return new_game(pts, req.variant)
    _error(400, "invalid-preset", f"unknown preset {preset!r}")


def _ai_move(session: Session):
    state = session.game
    if session.ai_policy == SOLVER_CAPPED:
        if session.solver is None:
            session.solver = Solver(session.initial)
        result = session.solver.solve(state, budget=AI_BUDGET)
        if not result.partial and result.best_move is not None:
            return result.best_move
    return greedy_move(state)


def _run_ai(session: Session) -> list:
    replies = []
    while (not is_terminal(session.game)
           and session.game.to_move == session.ai_side):
        move = _ai_move(session)
        if move is None:
            break
        session.game, outcome = apply_move(session.game, *move)
        session.updated = time.time()
        entry = {"player": session.ai_side, "move": list(move),
                 "scored": rat_to_str(outcome.scored)}
        session.move_log.append(entry)
        replies.append(entry)
    return replies


def _session_json(session: Session) -> dict:
    state = session.game
    data = {
        "id": session.id,
        "state": state_to_json(state),
        "aiSide": session.ai_side,
        "aiPolicy": session.ai_policy,
        "moveLog": session.move_log,
        "terminal": is_terminal(state),
    }
    if data["terminal"]:
        data["winner"] = winner(state)
    return data


def create_app(store: Optional[SessionStore] = None) -> FastAPI:
    app = FastAPI(title="dots-polygons service")
    sessions = store or SessionStore()

    @app.post("/games")
    def create_game(req: CreateRequest):
        if req.kind != "polygons":
            _error(400, "invalid-kind", "only polygon sessions are served")
        if req.ai_side not in (None, R, B):
            _error(400, "invalid-ai", "ai side must be R, B or null")
        state = _build_state(req)
        session = Session(id=uuid.uuid4().hex[:12], game=state, initial=state,
                          ai_side=req.ai_side, ai_policy=req.ai_policy)
        with session.lock:
            if session.ai_side == R:
                _run_ai(session)
        sessions.put(session)
        return _session_json(session)

    @app.get("/games/{session_id}")
    def get_state(session_id: str):
        return _session_json(sessions.get(session_id))

    @app.get("/games/{session_id}/hint")
    def get_hint(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            annotated = weighted_moves(session.game)
            min_weight = None
            for w in annotated:
                if w.weight is not None:
                    if min_weight is None or w.weight < min_weight:
                        min_weight = w.weight
            return {
                "moves": [
                    {
                        "move": list(w.edge),
                        "weight": None if w.weight is None else rat_to_str(w.weight),
                        "weightFloat": None if w.weight is None else rat_to_float(w.weight),
                        "gain": rat_to_str(w.gain),
                        "isMin": w.weight is not None and w.weight == min_weight,
                    }
                    for w in annotated
                ]
            }

    @app.post("/games/{session_id}/moves")
    def post_move(session_id: str, req: MoveRequest):
        session = sessions.get(session_id)
        with session.lock:
            state = session.game
            if is_terminal(state):
                _error(409, "game-over", "the game is finished")
            human = state.to_move
            if session.ai_side is not None and human == session.ai_side:
                _error(409, "not-your-turn", "the AI is to move")
            try:
                i, j = int(req.move[0]), int(req.move[1])
            except (ValueError, IndexError, TypeError):
                _error(400, "invalid-move", "move must be [i, j]")
            try:
                session.game, outcome = apply_move(state, i, j)
            except MoveError as err:
                _error(422, "illegal-move", str(err), {"reason": err.reason})
            session.updated = time.time()
            entry = {"player": human, "move": [i, j],
                     "scored": rat_to_str(outcome.scored)}
            session.move_log.append(entry)
            replies = []
            if session.ai_side is not None and not outcome.game_over:
                if session.game.to_move == session.ai_side:
                    replies = _run_ai(session)
            return {
                "outcome": {
                    "scored": rat_to_str(outcome.scored),
                    "extraTurn": outcome.extra_turn,
                    "gameOver": is_terminal(session.game),
                },
                "aiReplies": replies,
                "session": _session_json(session),
            }

    @app.get("/fixtures")
    def list_fixtures():
        return {"fixtures": fixture_lib.fixture_catalog()}

    return app


def replay(initial: PolygonGameState, move_log: list) -> PolygonGameState:
    state = initial
    for entry in move_log:
        state, _ = apply_move(state, *entry["move"])
    return state
