"""Exact negamax solver for Dots & Polygons states at desk scale.

For a fixed starting position the future value of any reachable state
depends only on which candidate edges have been drawn, so the transposition
table keys on a bitmask over the statically legal candidate moves.
Alpha-beta runs on exact rationals; a partial result is returned (never a
wrong exact claim) if the node budget runs out.
"""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geometry import Point, Rat, Segment, segment_blocked_by_point, segments_conflict
from .polygons import (B, R, PolygonGameState, apply_move, apply_move_core,
                       is_legal, legal_moves, new_game, opponent)
from . import polygons as _poly
from .strategy import greedy_move

sys.setrecursionlimit(100_000)

DEFAULT_BUDGET = 10_000_000
_INF = Fraction(10**12)
_EXACT, _LOWER, _UPPER = 0, 1, 2


class BudgetExceeded(Exception):
    pass


@dataclass
class SolveResult:
    margin: Optional[Rat]           # exact final mover-minus-opponent, or None
    best_move: Optional[tuple[int, int]]
    nodes: int
    canonical_line: Optional[list[tuple[int, int]]] = None
    partial: bool = False
    bound: Optional[Rat] = None     # best value proven before the budget ran out


class Solver:
    """Reusable solver bound to one starting position.

    All states passed to solve() must be reachable from the base state by
    drawing additional edges; the transposition table is shared across calls.
    """

    def __init__(self, base: PolygonGameState):
        self.base = base
        pts = base.points
        n = len(pts)
        cands = []
        for i in range(n):
            for j in range(i + 1, n):
                if (i, j) in base.edges:
                    continue
                seg = Segment(pts[i], pts[j])
                if any(k not in (i, j) and segment_blocked_by_point(seg, pts[k])
                       for k in range(n)):
                    continue
                if any(segments_conflict(seg, Segment(pts[a], pts[b]))
                       for a, b in base.edges):
                    continue
                if _poly._segment_enters_scored(base, seg):
                    continue
                cands.append((i, j))
        self.candidates = cands
        self.full_mask = (1 << len(cands)) - 1
        self.index = {m: k for k, m in enumerate(cands)}
        self.conflicts = [0] * len(cands)
        for a in range(len(cands)):
            sa = Segment(pts[cands[a][0]], pts[cands[a][1]])
            for b in range(a + 1, len(cands)):
                sb = Segment(pts[cands[b][0]], pts[cands[b][1]])
                if segments_conflict(sa, sb):
                    self.conflicts[a] |= 1 << b
                    self.conflicts[b] |= 1 << a
        from .geometry import midpoint as _mid
        from .subdivision import MasterRotation
        self.midpoints = [_mid(pts[i], pts[j]) for i, j in cands]
        self.master = MasterRotation(pts)
        self.memo: dict[int, tuple[int, Rat, Optional[tuple[int, int]]]] = {}
        self.nodes = 0

    # -- masks ---------------------------------------------------------

    def _masks_for(self, state: PolygonGameState) -> tuple[int, int]:
        drawn = 0
        for e in state.edges:
            k = self.index.get(e)
            if k is not None:
                drawn |= 1 << k
        dead = 0
        for k, m in enumerate(self.candidates):
            if not (drawn >> k) & 1 and not is_legal(state, *m):
                dead |= 1 << k
        return drawn, dead

    def _kill_mask(self, state: PolygonGameState, new_regions) -> int:
        # Regions created during search have fully drawn boundaries, so a
        # candidate that crosses one is already conflict-dead; the only other
        # way in is a chord, whose midpoint then lies strictly inside.
        mask = 0
        for k, mid in enumerate(self.midpoints):
            for region in new_regions:
                if _poly._in_footprint(mid, region, state.points):
                    mask |= 1 << k
                    break
        return mask

    # -- search ----------------------------------------------------------

    def _search(self, state, drawn, dead, budget, alpha, beta):
        avail = self.full_mask & ~(drawn | dead)
        if avail == 0:
            return Fraction(0), None

        entry = self.memo.get(drawn)
        if entry is not None:
            flag, value, move = entry
            if flag == _EXACT:
                return value, move
            if flag == _LOWER and value >= beta:
                return value, move
            if flag == _UPPER and value <= alpha:
                return value, move

        self.nodes += 1
        if self.nodes > budget:
            raise BudgetExceeded

        children = []
        mask, k = avail, 0
        while mask:
            if mask & 1:
                child, scored, regions = apply_move_core(
                    state, *self.candidates[k], trusted=True, master=self.master)
                children.append((scored, k, child, regions))
            mask >>= 1
            k += 1
        children.sort(key=lambda t: (-t[0], t[1]))

        a0 = alpha
        best = None
        best_move = None
        for scored, k, child, regions in children:
            new_drawn = drawn | (1 << k)
            new_dead = (dead | self.conflicts[k]) & ~new_drawn
            if regions:
                new_dead |= self._kill_mask(child, regions) & ~new_drawn
            if scored > 0:
                value, _ = self._search(child, new_drawn, new_dead, budget,
                                        alpha - scored, beta - scored)
                value = scored + value
            else:
                value, _ = self._search(child, new_drawn, new_dead, budget,
                                        -beta, -alpha)
                value = -value
            if best is None or value > best:
                best, best_move = value, self.candidates[k]
            if best > alpha:
                alpha = best
            if alpha >= beta:
                break
        if best <= a0:
            flag = _UPPER
        elif best >= beta:
            flag = _LOWER
        else:
            flag = _EXACT
        self.memo[drawn] = (flag, best, best_move)
        return best, best_move

    def solve(self, state: Optional[PolygonGameState] = None,
              budget: int = DEFAULT_BUDGET, line: bool = False) -> SolveResult:
        state = state if state is not None else self.base
        drawn, dead = self._masks_for(state)
        start_nodes = self.nodes
        try:
            value, move = self._search(state, drawn, dead,
                                       start_nodes + budget, -_INF, _INF)
        except BudgetExceeded:
            return SolveResult(margin=None, best_move=None,
                               nodes=self.nodes - start_nodes, partial=True)
        mover = state.to_move
        diff = state.score_of(mover) - state.score_of(opponent(mover))
        result = SolveResult(margin=diff + value, best_move=move,
                             nodes=self.nodes - start_nodes)
        if line:
            result.canonical_line = self._principal_line(state, budget)
        return result

    def _principal_line(self, state, budget) -> list[tuple[int, int]]:
        out = []
        current = state
        while True:
            res = self.solve(current, budget=budget)
            if res.partial or res.best_move is None:
                break
            out.append(res.best_move)
            current, _, _ = apply_move_core(current, *res.best_move)
        return out


def solve(state: PolygonGameState, budget: int = DEFAULT_BUDGET,
          line: bool = False) -> SolveResult:
    return Solver(state).solve(budget=budget, line=line)


def can_win(state: PolygonGameState, who: str,
            budget: int = DEFAULT_BUDGET) -> bool:
    res = solve(state, budget=budget)
    if res.partial:
        raise BudgetExceeded("cannot decide within budget")
    if who == state.to_move:
        return res.margin > 0
    return res.margin < 0


# -- random convex positions -------------------------------------------------

def convex_position(n: int, rng: random.Random,
                    stretched: bool = False) -> list[Point]:
    """n rational points in convex position with pairwise distinct triangle
    areas, so optimal play cannot end in a draw. Points sit on a rational
    circle; stretched=True applies a random affine map (areas scale
    uniformly, so distinctness is preserved) to escape near-regular shapes."""
    while True:
        ks = rng.sample(range(-360, 361), n)
        pts = []
        for k in ks:
            t = Fraction(k, 101)
            den = 1 + t * t
            pts.append(Point((1 - t * t) / den, 2 * t / den))
        if stretched:
            sx = Fraction(rng.randint(2, 12), rng.randint(1, 3))
            sy = Fraction(rng.randint(1, 4), rng.randint(1, 3))
            shear = Fraction(rng.randint(-3, 3), 2)
            pts = [Point(sx * p.x + shear * p.y, sy * p.y) for p in pts]
        pts = _ccw_sort(pts)
        areas = set()
        ok = True
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    ar = abs(_tri_area(pts[a], pts[b], pts[c]))
                    if ar == 0 or ar in areas:
                        ok = False
                        break
                    areas.add(ar)
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return pts


def _tri_area(a, b, c) -> Rat:
    return ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)) / 2


def _ccw_sort(pts):
    from functools import cmp_to_key
    cx = sum((p.x for p in pts), Fraction(0)) / len(pts)
    cy = sum((p.y for p in pts), Fraction(0)) / len(pts)

    def cmp(p, q):
        hp = 0 if (p.y - cy > 0 or (p.y - cy == 0 and p.x - cx > 0)) else 1
        hq = 0 if (q.y - cy > 0 or (q.y - cy == 0 and q.x - cx > 0)) else 1
        if hp != hq:
            return -1 if hp < hq else 1
        cr = (p.x - cx) * (q.y - cy) - (p.y - cy) * (q.x - cx)
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    return sorted(pts, key=cmp_to_key(cmp))


# -- theorem verification ------------------------------------------------------

@dataclass
class TheoremReport:
    n: int
    trials: int
    seed: int
    passes: int = 0
    partials: int = 0
    counterexamples: list = field(default_factory=list)
    margins: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_last_player_theorem(n: int, trials: int, seed: int,
                               variant: str = _poly.SIMPLE,
                               budget: int = DEFAULT_BUDGET) -> TheoremReport:
    """The last player (R for odd n, B for even n) secures at least half the
    hull area on random draw-free convex positions."""
    if not 3 <= n <= 7:
        raise ValueError("the theorem covers n = 3..7")
    rng = random.Random(seed)
    report = TheoremReport(n=n, trials=trials, seed=seed)
    for _ in range(trials):
        pts = convex_position(n, rng)
        state = new_game(pts, variant)
        res = solve(state, budget=budget)
        if res.partial:
            report.partials += 1
            continue
        last = R if n % 2 == 1 else B
        ok = res.margin >= 0 if last == R else res.margin <= 0
        report.margins.append(res.margin)
        if ok:
            report.passes += 1
        else:
            report.counterexamples.append((pts, res.margin))
    return report


# -- greedy counterexample search ----------------------------------------------

@dataclass
class GreedyCounterexample:
    points: list[Point]
    variant: str
    prefix: list[tuple[int, int]]   # moves leading to the pinned state
    margin: Rat                     # solver margin at the pinned state
    greedy_final_diff: Rat          # greedy player's final lead (negative = loss)


def find_greedy_counterexample(n: int, trials: int, seed: int,
                               variant: str = _poly.SIMPLE,
                               budget: int = DEFAULT_BUDGET
                               ) -> Optional[GreedyCounterexample]:
    """Search playouts in which the greedy last player forfeits a
    solver-proven win; returns the earliest winning state they ruined."""
    rng = random.Random(seed)
    for trial in range(trials):
        pts = convex_position(n, rng, stretched=True)
        last = R if n % 2 == 1 else B
        state = new_game(pts, variant)
        engine = Solver(state)
        prefix: list[tuple[int, int]] = []
        pinned_prefix = None
        pinned_margin = None
        abandoned = False
        while True:
            moves = legal_moves(state)
            if not moves:
                break
            res = engine.solve(state, budget=budget)
            if res.partial:
                abandoned = True
                break
            if state.to_move == last:
                # pin the latest state the greedy player could still win from
                if res.margin > 0:
                    pinned_prefix = list(prefix)
                    pinned_margin = res.margin
                move = greedy_move(state)
            else:
                move = res.best_move
            state, _ = apply_move(state, *move)
            prefix.append(move)
        if abandoned or pinned_prefix is None:
            continue
        diff = state.score_of(last) - state.score_of(opponent(last))
        if diff < 0:
            return GreedyCounterexample(points=list(pts), variant=variant,
                                        prefix=pinned_prefix,
                                        margin=pinned_margin,
                                        greedy_final_diff=diff)
    return None
