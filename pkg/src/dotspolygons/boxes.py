"""Dots & Boxes engine and the endgame algebra used by the hardness proof.

Walls are unit lattice segments keyed ('h', x, y) for the segment from
(x, y) to (x+1, y), and ('v', x, y) for the segment from (x, y) to
(x, y+1). Cell (x, y) spans [x, x+1] x [y, y+1]. Pre-claimed filler cells
are owned by the pseudo player 'W' and score for nobody.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Wall = tuple[str, int, int]
Cell = tuple[int, int]

R = "R"
B = "B"
W = "W"  # pre-claimed filler, contributes to neither score


class BoxesError(ValueError):
    pass


class NotSettled(BoxesError):
    """A cell still has 3+ openings; chains and cycles are not defined yet."""


class UnsupportedDecomposition(BoxesError):
    """The controlled-score formulas assume at least one chain."""


def cell_walls(cell: Cell) -> list[Wall]:
    x, y = cell
    return [("h", x, y), ("h", x, y + 1), ("v", x, y), ("v", x + 1, y)]


def wall_cells(wall: Wall, width: int, height: int) -> list[Cell]:
    kind, x, y = wall
    out = []
    if kind == "h":
        if y < height:
            out.append((x, y))
        if y > 0:
            out.append((x, y - 1))
    else:
        if x < width:
            out.append((x, y))
        if x > 0:
            out.append((x - 1, y))
    return out


def all_walls(width: int, height: int) -> list[Wall]:
    walls: list[Wall] = []
    for y in range(height + 1):
        for x in range(width):
            walls.append(("h", x, y))
    for y in range(height):
        for x in range(width + 1):
            walls.append(("v", x, y))
    return walls


@dataclass(frozen=True)
class BoxesState:
    width: int
    height: int
    walls: frozenset[Wall]
    claimed: dict[Cell, str] = field(default_factory=dict)
    score_r: int = 0
    score_b: int = 0
    to_move: str = R

    def cells(self) -> Iterable[Cell]:
        for y in range(self.height):
            for x in range(self.width):
                yield (x, y)

    def unclaimed(self) -> list[Cell]:
        return [c for c in self.cells() if c not in self.claimed]

    def missing_walls(self, cell: Cell) -> list[Wall]:
        return [w for w in cell_walls(cell) if w not in self.walls]

    def score_of(self, player: str) -> int:
        return self.score_r if player == R else self.score_b


def new_board(width: int, height: int) -> BoxesState:
    return BoxesState(width=width, height=height, walls=frozenset())


def make_board(width, height, walls, claimed, score_r=0, score_b=0,
               to_move=B, validate=True) -> BoxesState:
    state = BoxesState(width=width, height=height, walls=frozenset(walls),
                       claimed=dict(claimed), score_r=score_r, score_b=score_b,
                       to_move=to_move)
    if validate:
        validate_board(state)
    return state


def validate_board(s: BoxesState):
    for w in s.walls:
        kind, x, y = w
        limit_x = s.width if kind == "h" else s.width + 1
        limit_y = s.height + 1 if kind == "h" else s.height
        if not (0 <= x < limit_x and 0 <= y < limit_y):
            raise BoxesError(f"wall {w} outside the board")
    for cell, owner in s.claimed.items():
        if owner not in (R, B, W):
            raise BoxesError(f"bad owner {owner}")
        if owner != W and s.missing_walls(cell):
            raise BoxesError(f"claimed cell {cell} is missing walls")
    counted = sum(1 for o in s.claimed.values() if o == R)
    if counted != s.score_r:
        raise BoxesError("score_r does not match claimed cells")
    if sum(1 for o in s.claimed.values() if o == B) != s.score_b:
        raise BoxesError("score_b does not match claimed cells")


def boxes_legal_moves(s: BoxesState) -> list[Wall]:
    return [w for w in all_walls(s.width, s.height) if w not in s.walls]


def boxes_apply(s: BoxesState, wall: Wall) -> tuple[BoxesState, int, bool]:
    if wall not in all_walls(s.width, s.height):
        raise BoxesError(f"wall {wall} outside the board")
    if wall in s.walls:
        raise BoxesError(f"wall {wall} already drawn")
    new_walls = s.walls | {wall}
    completed = []
    for cell in wall_cells(wall, s.width, s.height):
        if cell in s.claimed:
            continue
        if all(w in new_walls for w in cell_walls(cell)):
            completed.append(cell)
    claimed = dict(s.claimed)
    for cell in completed:
        claimed[cell] = s.to_move
    mover = s.to_move
    score_r = s.score_r + (len(completed) if mover == R else 0)
    score_b = s.score_b + (len(completed) if mover == B else 0)
    nxt = BoxesState(width=s.width, height=s.height, walls=new_walls,
                     claimed=claimed, score_r=score_r, score_b=score_b,
                     to_move=mover if completed else (B if mover == R else R))
    over = len(nxt.walls) == len(all_walls(s.width, s.height))
    return nxt, len(completed), bool(completed) and not over


# -- chains and cycles -------------------------------------------------------

@dataclass(frozen=True)
class EndgameDecomposition:
    chains: tuple[tuple[Cell, ...], ...]
    cycles: tuple[tuple[Cell, ...], ...]

    @property
    def n_chains(self) -> int:
        return len(self.chains)

    @property
    def n_cycles(self) -> int:
        return len(self.cycles)

    @property
    def n_unclaimed(self) -> int:
        return sum(len(c) for c in self.chains) + sum(len(c) for c in self.cycles)


def decompose_endgame(s: BoxesState) -> EndgameDecomposition:
    """Partition the unclaimed cells into maximal chains and cycles via the
    strings-and-coins dual (cells are coins, shared missing walls strings)."""
    cells = set(s.unclaimed())
    neighbors: dict[Cell, list[Cell]] = {c: [] for c in cells}
    for c in cells:
        missing = s.missing_walls(c)
        if len(missing) > 2:
            raise NotSettled(f"cell {c} has {len(missing)} openings")
        for w in missing:
            for other in wall_cells(w, s.width, s.height):
                if other != c and other in cells:
                    neighbors[c].append(other)
    chains = []
    cycles = []
    seen: set[Cell] = set()
    for c in sorted(cells):
        if c in seen:
            continue
        component = _component(c, neighbors)
        seen.update(component)
        if all(len(neighbors[x]) == 2 for x in component) and len(component) >= 2:
            cycles.append(tuple(_order_cycle(component, neighbors)))
        else:
            chains.append(tuple(_order_chain(component, neighbors)))
    return EndgameDecomposition(chains=tuple(chains), cycles=tuple(cycles))


def _component(start, neighbors):
    stack = [start]
    out = {start}
    while stack:
        c = stack.pop()
        for n in neighbors[c]:
            if n not in out:
                out.add(n)
                stack.append(n)
    return out


def _order_chain(component, neighbors):
    ends = sorted(c for c in component if len(neighbors[c]) <= 1)
    current = ends[0] if ends else sorted(component)[0]
    order = [current]
    prev = None
    while len(order) < len(component):
        nxt = [n for n in neighbors[current] if n != prev]
        prev, current = current, nxt[0]
        order.append(current)
    return order


def _order_cycle(component, neighbors):
    start = sorted(component)[0]
    order = [start]
    prev = None
    current = start
    while True:
        nxt = [n for n in neighbors[current] if n != prev]
        prev, current = current, nxt[0]
        if current == start:
            break
        order.append(current)
    return order


def controlled_scores(s_b: int, s_r: int, d: EndgameDecomposition) -> tuple[int, int]:
    """Final scores when the controlling player double-crosses everything but
    the last chain."""
    if d.n_chains < 1:
        raise UnsupportedDecomposition(
            "the closed-form final scores assume a last chain exists")
    s_b_final = s_b + 2 * (d.n_chains - 1) + 4 * d.n_cycles
    s_r_final = s_r + (d.n_unclaimed - 2 * (d.n_chains - 1) - 4 * d.n_cycles)
    return s_b_final, s_r_final


# -- exact search oracle -------------------------------------------------------

def boxes_minimax(s: BoxesState, bound: int = 28
                  ) -> tuple[int, Optional[Wall]]:
    """Exact margin (mover minus opponent from here on) and a best move."""
    undrawn = boxes_legal_moves(s)
    if len(undrawn) > bound:
        raise BoxesError(
            f"{len(undrawn)} undrawn walls exceeds the oracle bound {bound}")
    order = sorted(undrawn)
    pos = {w: k for k, w in enumerate(order)}
    memo: dict[int, tuple[int, Optional[int]]] = {}

    cells_by_wall: dict[int, list[Cell]] = {}
    for w, k in pos.items():
        cells_by_wall[k] = [c for c in wall_cells(w, s.width, s.height)
                            if c not in s.claimed]
    wall_ids_by_cell: dict[Cell, list[int]] = {}
    for k, cs in cells_by_wall.items():
        for c in cs:
            wall_ids_by_cell.setdefault(c, []).append(k)

    full = (1 << len(order)) - 1

    def search(drawn: int) -> tuple[int, Optional[int]]:
        if drawn == full:
            return 0, None
        hit = memo.get(drawn)
        if hit is not None:
            return hit
        best = None
        best_k = None
        for k in range(len(order)):
            if (drawn >> k) & 1:
                continue
            completed = 0
            for c in cells_by_wall[k]:
                if all((drawn >> w2) & 1 or w2 == k for w2 in wall_ids_by_cell[c]):
                    completed += 1
            child_value, _ = search(drawn | (1 << k))
            value = completed + child_value if completed else -child_value
            if best is None or value > best:
                best, best_k = value, k
        memo[drawn] = (best, best_k)
        return best, best_k

    value, k = search(0)
    return value, (order[k] if k is not None else None)


# -- double-cross ---------------------------------------------------------------

@dataclass(frozen=True)
class OpenedStructure:
    kind: str                 # 'chain' or 'cycle'
    cells: tuple[Cell, ...]   # in order; chains start at the opened end


def double_cross_walls(s: BoxesState, opened: OpenedStructure) -> list[Wall]:
    """Wall sequence that claims all but the tail of the opened structure and
    then declines: one 2x1 rectangle for a chain, two for a cycle."""
    from .strategy import TakeAllSignal
    cells = list(opened.cells)
    if opened.kind == "chain":
        if len(cells) < 2:
            raise TakeAllSignal(_take_all_sequence(s, cells))
        seq = []
        state = s
        for a, b in zip(cells, cells[1:]):
            if len(cells) - len(seq) <= 2:
                break
            wall = _shared_missing_wall(state, a, b)
            seq.append(wall)
            state, _, _ = boxes_apply(state, wall)
        tail = cells[-1]
        shared = _shared_missing_wall(state, cells[-2], cells[-1])
        decline = [w for w in state.missing_walls(tail) if w != shared]
        if not decline:
            raise TakeAllSignal(_take_all_sequence(s, cells))
        seq.append(decline[0])
        return seq
    # cycle: after the opponent opened it the component is a path; claim all
    # but four cells, then split the remnant into two dominoes
    if len(cells) < 4:
        raise TakeAllSignal(_take_all_sequence(s, cells))
    state = s
    seq = []
    path = _opened_cycle_path(state, cells)
    while len(path) > 4:
        wall = _shared_missing_wall(state, path[0], path[1])
        seq.append(wall)
        state, _, _ = boxes_apply(state, wall)
        path = path[1:]
    middle = _shared_missing_wall(state, path[1], path[2])
    seq.append(middle)
    return seq


def _take_all_sequence(s: BoxesState, cells) -> list[Wall]:
    seq = []
    state = s
    remaining = set(cells)
    while remaining:
        progress = False
        for c in sorted(remaining):
            missing = state.missing_walls(c)
            if len(missing) == 1:
                seq.append(missing[0])
                state, _, _ = boxes_apply(state, missing[0])
                remaining -= {x for x in remaining
                              if not state.missing_walls(x)}
                progress = True
                break
        if not progress:
            break
    return seq


def _shared_missing_wall(s: BoxesState, a: Cell, b: Cell) -> Wall:
    shared = [w for w in s.missing_walls(a) if w in s.missing_walls(b)]
    if not shared:
        raise BoxesError(f"cells {a} and {b} share no missing wall")
    return shared[0]


def _opened_cycle_path(s: BoxesState, cells) -> list[Cell]:
    free = [c for c in cells if len(s.missing_walls(c)) == 1]
    if not free:
        raise BoxesError("cycle is not opened")
    start = free[0]
    order = [start]
    prev = None
    current = start
    while len(order) < len(cells):
        nxt = None
        for w in s.missing_walls(current):
            for other in wall_cells(w, s.width, s.height):
                if other != current and other in cells and other != prev:
                    nxt = other
        if nxt is None:
            break
        prev, current = current, nxt
        order.append(current)
    return order


# -- rendering / serialization ----------------------------------------------------

def render_board(s: BoxesState) -> str:
    lines = []
    for y in range(s.height, -1, -1):
        top = []
        for x in range(s.width):
            top.append("+")
            top.append("--" if ("h", x, y) in s.walls else "  ")
        top.append("+")
        lines.append("".join(top))
        if y == 0:
            break
        row = []
        cy = y - 1
        for x in range(s.width + 1):
            row.append("|" if ("v", x, cy) in s.walls else " ")
            if x < s.width:
                owner = s.claimed.get((x, cy))
                row.append({R: "RR", B: "BB", W: "##"}.get(owner, "  "))
        lines.append("".join(row))
    return "\n".join(lines)


def parse_board(text: str, score_r=0, score_b=0, to_move=B) -> BoxesState:
    lines = [ln.rstrip("\n") for ln in text.strip("\n").split("\n")]
    height = (len(lines) - 1) // 2
    width = (max(len(ln) for ln in lines) - 1) // 3
    walls = set()
    claimed = {}
    for row, line in enumerate(lines):
        y = height - row // 2
        if row % 2 == 0:
            for x in range(width):
                piece = line[3 * x + 1:3 * x + 3]
                if piece == "--":
                    walls.add(("h", x, y))
        else:
            cy = y - 1
            for x in range(width + 1):
                if 3 * x < len(line) and line[3 * x] == "|":
                    walls.add(("v", x, cy))
                if x < width:
                    piece = line[3 * x + 1:3 * x + 3]
                    if piece in ("RR", "BB", "##"):
                        claimed[(x, cy)] = {"RR": R, "BB": B, "##": W}[piece]
    return make_board(width, height, walls, claimed, score_r=score_r,
                      score_b=score_b, to_move=to_move, validate=False)


def board_to_json(s: BoxesState) -> dict:
    return {
        "width": s.width,
        "height": s.height,
        "walls": sorted([list(w) for w in s.walls]),
        "claimed": sorted([[x, y, owner] for (x, y), owner in s.claimed.items()]),
        "scoreR": s.score_r,
        "scoreB": s.score_b,
        "toMove": s.to_move,
    }


def board_from_json(data: dict) -> BoxesState:
    return make_board(
        data["width"], data["height"],
        [tuple(w) for w in data["walls"]],
        {(x, y): owner for x, y, owner in data.get("claimed", [])},
        score_r=data.get("scoreR", 0), score_b=data.get("scoreB", 0),
        to_move=data.get("toMove", B))
