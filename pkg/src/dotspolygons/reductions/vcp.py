"""Exact maximum vertex-disjoint cycle packing.

Primary oracle: branch and bound on the graph itself. A branch either
discards a vertex or commits one pair of its edges to a cycle; committed
edges grow open chains that must eventually close, which prunes hard.
Disconnected pieces are solved independently (their optima add) and
chain-free pieces are memoized, so the structured gadget graphs collapse
into repeated fragments.

Secondary oracle (small graphs, cross-check): enumerate chordless cycles
(a maximum packing can always avoid chorded cycles, because a chorded cycle
contains a shorter cycle on a subset of its vertices) and run set-packing
branch and bound over them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import networkx as nx


class VcpError(ValueError):
    pass


@dataclass
class PackingResult:
    size: int
    cycles: list[tuple]      # vertex tuples, pairwise disjoint
    n_cycles_enumerated: int = 0


# ---------------------------------------------------------------------------
# primary oracle
# ---------------------------------------------------------------------------

class _State:
    __slots__ = ("adj", "chain_end", "chain_list", "count", "cycles")

    def __init__(self, adj, chain_end, chain_list, count=0, cycles=None):
        self.adj = adj
        self.chain_end = chain_end
        self.chain_list = chain_list
        self.count = count
        self.cycles = cycles if cycles is not None else []

    def clone(self):
        return _State({v: set(ns) for v, ns in self.adj.items()},
                      dict(self.chain_end),
                      {v: list(l) for v, l in self.chain_list.items()},
                      self.count, list(self.cycles))


def vcp_oracle(g: nx.Graph, cap: int = 60, node_limit: int = 20_000_000
               ) -> PackingResult:
    """Exact maximum number of vertex-disjoint cycles, with a witness.

    The size comes from tree-decomposition DP when the width allows;
    a witness achieving it is then recovered by branch and bound, which is
    fast once the optimum is known. Wide graphs fall back to pure branch
    and bound."""
    from .twdp import max_cycle_packing_tw
    if g.number_of_nodes() > cap:
        raise VcpError(
            f"{g.number_of_nodes()} vertices exceeds the oracle cap {cap}")
    g = nx.Graph(g)
    girth = 3 if any(t for _, t in nx.triangles(g).items()) else 4
    size_dp = max_cycle_packing_tw(g)
    if size_dp is None:
        # decomposition too wide: pure branch and bound
        adj = {v: set(g.neighbors(v)) for v in g.nodes()}
        state = _State(adj, {}, {})
        ctx = {"nodes": 0, "limit": node_limit, "girth": girth, "memo": {}}
        result = _solve(state, ctx, -1)
        if result is None:
            raise VcpError("internal error: root solve infeasible")
        size, cycles = result
        _verify_witness(g, cycles)
        return PackingResult(size=size, cycles=cycles)
    cycles = _peel_witness(g, size_dp)
    _verify_witness(g, cycles)
    return PackingResult(size=size_dp, cycles=cycles)


def _peel_witness(g: nx.Graph, size: int) -> list[tuple]:
    """Recover a maximum packing: accept any disjoint set of chordless
    cycles whose removal drops the optimum by exactly its size, preferring
    whole greedy chunks. Some maximum packing consists of chordless cycles,
    so a single-cycle peel always exists as a fallback."""
    from .twdp import max_cycle_packing_tw
    h = nx.Graph(g)
    remaining = size
    witness: list[tuple] = []
    while remaining > 0:
        girth = 3 if any(t for _, t in nx.triangles(h).items()) else 4
        adj = {v: set(h.neighbors(v)) for v in h.nodes()}
        chunk = _greedy_pack(_State(adj, {}, {}), girth)[1]
        if chunk:
            h2 = h.copy()
            for cyc in chunk:
                h2.remove_nodes_from(cyc)
            sub = max_cycle_packing_tw(h2)
            if sub is not None and sub == remaining - len(chunk):
                witness.extend(tuple(c) for c in chunk)
                h = h2
                remaining -= len(chunk)
                continue
        found = False
        for length in range(girth, h.number_of_nodes() + 1):
            for cand in nx.chordless_cycles(h, length_bound=length):
                if len(cand) != length:
                    continue
                h2 = h.copy()
                h2.remove_nodes_from(cand)
                sub = max_cycle_packing_tw(h2)
                if sub is not None and sub == remaining - 1:
                    witness.append(tuple(cand))
                    h = h2
                    remaining -= 1
                    found = True
                    break
            if found:
                break
        if not found:
            raise VcpError("witness peeling failed")
    return witness


def _commit(state: _State, a, b):
    """Commit edge (a, b) to a cycle-in-progress."""
    state.adj[a].discard(b)
    state.adj[b].discard(a)
    a_end = state.chain_end.get(a)
    b_end = state.chain_end.get(b)
    if a_end is None and b_end is None:
        state.chain_end[a] = b
        state.chain_end[b] = a
        state.chain_list[a] = [a, b]
        state.chain_list[b] = [b, a]
        return
    if a_end is not None and b_end is None:
        _extend(state, a, b)
        return
    if b_end is not None and a_end is None:
        _extend(state, b, a)
        return
    if a_end == b:
        # closing the chain into a cycle
        cycle = state.chain_list[a]
        state.count += 1
        state.cycles.append(tuple(cycle))
        for v in cycle:
            _delete_vertex(state, v)
        return
    # merging two distinct chains
    la = state.chain_list[a]
    lb = state.chain_list[b]
    merged = list(reversed(la)) + lb
    p, q = merged[0], merged[-1]
    _retire_interior(state, a)
    _retire_interior(state, b)
    for e in (a, b):
        state.chain_end.pop(e, None)
        state.chain_list.pop(e, None)
    state.chain_end[p] = q
    state.chain_end[q] = p
    state.chain_list[p] = merged
    state.chain_list[q] = list(reversed(merged))


def _extend(state: _State, endpoint, fresh):
    lst = state.chain_list[endpoint]
    far = lst[-1]
    new_list = [fresh] + lst
    _retire_interior(state, endpoint)
    state.chain_end.pop(endpoint, None)
    state.chain_list.pop(endpoint, None)
    state.chain_end[fresh] = far
    state.chain_end[far] = fresh
    state.chain_list[fresh] = new_list
    state.chain_list[far] = list(reversed(new_list))


def _retire_interior(state: _State, v):
    for n in list(state.adj.get(v, ())):
        state.adj[n].discard(v)
    state.adj.pop(v, None)


def _delete_vertex(state: _State, v):
    for n in list(state.adj.get(v, ())):
        state.adj[n].discard(v)
    state.adj.pop(v, None)
    state.chain_end.pop(v, None)
    state.chain_list.pop(v, None)


def _simplify(state: _State) -> bool:
    """Forced moves; False means a committed chain can no longer close."""
    changed = True
    while changed:
        changed = False
        for v in list(state.adj.keys()):
            if v not in state.adj:
                continue
            if v in state.chain_end:
                options = state.adj[v]
                if not options:
                    return False
                if len(options) == 1:
                    _commit(state, v, next(iter(options)))
                    changed = True
            else:
                deg = len(state.adj[v])
                if deg <= 1:
                    _delete_vertex(state, v)
                    changed = bool(deg)
    return True


def _bound_single(state: _State, girth: int) -> int:
    open_chains = len(state.chain_end) // 2
    fresh = len(state.adj) - len(state.chain_end)
    return state.count + open_chains + max(fresh, 0) // girth


def _components(state: _State):
    seen = set()
    comps = []
    for start in state.adj:
        if start in seen:
            continue
        stack = [start]
        comp = {start}
        while stack:
            v = stack.pop()
            for n in state.adj[v]:
                if n not in comp:
                    comp.add(n)
                    stack.append(n)
        seen |= comp
        comps.append(comp)
    return comps


def _comp_key(state: _State, comp):
    edges = frozenset(
        frozenset((v, n)) for v in comp for n in state.adj[v])
    return edges


def _comp_bound(state: _State, comp, girth: int) -> int:
    ends = sum(1 for v in comp if v in state.chain_end)
    return ends // 2 + (len(comp) - ends) // girth


def _solve(state: _State, ctx, lb: int) -> Optional[tuple[int, list]]:
    """Best (count, cycles) from this state, exact whenever it exceeds lb.

    Returns None if the commitments are infeasible or the value provably
    cannot exceed lb (fail-soft)."""
    ctx["nodes"] += 1
    if ctx["nodes"] > ctx["limit"]:
        raise VcpError("branch and bound node limit exceeded")
    if not _simplify(state):
        return None
    base_count = state.count
    base_cycles = list(state.cycles)
    comps = _components(state)
    # a chain whose endpoints fall into different pieces can never close
    comp_of = {}
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    for a, b in state.chain_end.items():
        if comp_of.get(a) != comp_of.get(b):
            return None
    if not comps:
        return base_count, base_cycles
    girth = ctx["girth"]
    bounds = [_comp_bound(state, comp, girth) for comp in comps]
    if base_count + sum(bounds) <= lb:
        return None
    total = base_count
    all_cycles = base_cycles
    remaining = sum(bounds)
    for idx, comp in enumerate(comps):
        remaining -= bounds[idx]
        has_chain = any(v in state.chain_end for v in comp)
        key = None
        hit = None
        if not has_chain:
            key = _comp_key(state, comp)
            hit = ctx["memo"].get(key)
        if hit is not None:
            value, cycles = hit
        else:
            sub = _State({v: set(state.adj[v]) for v in comp},
                         {v: state.chain_end[v] for v in comp
                          if v in state.chain_end},
                         {v: list(state.chain_list[v]) for v in comp
                          if v in state.chain_list})
            # value needed from this component for the total to beat lb
            need = lb - total - remaining
            res = _branch(sub, ctx, need)
            if res is None:
                return None
            value, cycles = res
            if key is not None and value > need:
                ctx["memo"][key] = (value, cycles)  # exact above the bound
        total += value
        all_cycles = all_cycles + cycles
    if total <= lb:
        return None
    return total, all_cycles


def _greedy_pack(state: _State, girth: int) -> tuple[int, list]:
    """Quick achievable packing used to seed the bound."""
    g = nx.Graph()
    for v, ns in state.adj.items():
        g.add_node(v)
        for n in ns:
            g.add_edge(v, n)
    used: set = set()
    picked = []
    try:
        for cyc in nx.chordless_cycles(g, length_bound=girth + 2):
            if any(v in used for v in cyc):
                continue
            used.update(cyc)
            picked.append(tuple(cyc))
    except nx.NetworkXError:
        pass
    return len(picked), picked


def _branch(state: _State, ctx, lb: int) -> Optional[tuple[int, list]]:
    """Branch within one connected component; exact above lb, else None."""
    girth = ctx["girth"]
    if not state.adj:
        value = state.count
        if value <= lb:
            return None
        return value, list(state.cycles)
    best: Optional[tuple[int, list]] = None
    best_val = lb
    if not state.chain_end and not state.cycles and state.count == 0:
        size, cycles = _greedy_pack(state, girth)
        if size > best_val:
            best, best_val = (size, cycles), size
    endpoints = [v for v in state.chain_end if v in state.adj]
    if endpoints:
        v = min(endpoints, key=lambda x: (len(state.adj[x]), str(x)))
        branches = []
        for b in sorted(state.adj[v], key=str):
            child = state.clone()
            _commit(child, v, b)
            branches.append(child)
    else:
        v = min(state.adj, key=lambda x: (len(state.adj[x]), str(x)))
        neighbors = sorted(state.adj[v], key=str)
        branches = []
        for e1, e2 in itertools.combinations(neighbors, 2):
            child = state.clone()
            _commit(child, v, e1)
            if v in child.adj and e2 in child.adj.get(v, ()):
                _commit(child, v, e2)
                branches.append(child)
        drop = state.clone()
        _delete_vertex(drop, v)
        branches.append(drop)
    for child in branches:
        if _bound_single(child, girth) <= best_val:
            continue
        res = _solve(child, ctx, best_val)
        if res is not None and res[0] > best_val:
            best, best_val = res, res[0]
    return best


# ---------------------------------------------------------------------------
# secondary oracle: chordless-cycle enumeration + set packing
# ---------------------------------------------------------------------------

def enumerate_chordless_cycles(g: nx.Graph, max_cycles: int = 250_000
                               ) -> list[tuple]:
    out = []
    for cyc in nx.chordless_cycles(g):
        out.append(tuple(cyc))
        if len(out) > max_cycles:
            raise VcpError(f"more than {max_cycles} chordless cycles; refusing")
    return out


def vcp_oracle_enumerative(g: nx.Graph, cap: int = 60,
                           max_cycles: int = 250_000) -> PackingResult:
    """Independent oracle: chordless enumeration plus set-packing search."""
    if g.number_of_nodes() > cap:
        raise VcpError(
            f"{g.number_of_nodes()} vertices exceeds the oracle cap {cap}")
    cycles = enumerate_chordless_cycles(g, max_cycles=max_cycles)
    if not cycles:
        return PackingResult(size=0, cycles=[], n_cycles_enumerated=0)
    nodes = sorted(g.nodes(), key=str)
    node_id = {v: k for k, v in enumerate(nodes)}
    masks = []
    for cyc in cycles:
        m = 0
        for v in cyc:
            m |= 1 << node_id[v]
        masks.append(m)
    order = sorted(range(len(cycles)), key=lambda k: len(cycles[k]))
    cycles = [cycles[k] for k in order]
    masks = [masks[k] for k in order]
    min_len = min(len(c) for c in cycles)
    best = [0, []]

    def search(used_mask: int, chosen: list[int], active):
        if len(chosen) > best[0]:
            best[0] = len(chosen)
            best[1] = list(chosen)
        free = g.number_of_nodes() - bin(used_mask).count("1")
        if len(chosen) + free // min_len <= best[0] or not active:
            return
        counts: dict[int, int] = {}
        for ci in active:
            for v in cycles[ci]:
                vid = node_id[v]
                if not (used_mask >> vid) & 1:
                    counts[vid] = counts.get(vid, 0) + 1
        pivot = min(counts, key=lambda vid: (counts[vid], vid))
        through = [ci for ci in active if (masks[ci] >> pivot) & 1]
        for ci in through:
            chosen.append(ci)
            nxt = [cj for cj in active if not (masks[cj] & masks[ci])]
            search(used_mask | masks[ci], chosen, nxt)
            chosen.pop()
        through_set = set(through)
        rest = [cj for cj in active if cj not in through_set]
        search(used_mask | (1 << pivot), chosen, rest)

    search(0, [], list(range(len(cycles))))
    witness = [cycles[ci] for ci in best[1]]
    _verify_witness(g, witness)
    return PackingResult(size=best[0], cycles=witness,
                         n_cycles_enumerated=len(cycles))


def _verify_witness(g: nx.Graph, witness):
    seen = set()
    for cyc in witness:
        if len(cyc) < 3:
            raise VcpError("witness cycle too short")
        for v in cyc:
            if v in seen:
                raise VcpError("witness cycles are not vertex-disjoint")
            seen.add(v)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not g.has_edge(a, b):
                raise VcpError(f"witness uses a missing edge {a}-{b}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def node_key(v) -> str:
    return "/".join(str(part) for part in v) if isinstance(v, tuple) else str(v)


def graph_to_json(g: nx.Graph, labels: Optional[dict] = None,
                  meta: Optional[dict] = None) -> dict:
    nodes = sorted(g.nodes(), key=node_key)
    data = {
        "vertices": [node_key(v) for v in nodes],
        "edges": sorted(sorted([node_key(u), node_key(v)])
                        for u, v in g.edges()),
    }
    if labels:
        data["labels"] = {node_key(v): labels[v] for v in labels}
    if meta:
        data.update(meta)
    return data


def graph_from_json(data: dict) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(data["vertices"])
    g.add_edges_from((u, v) for u, v in data["edges"])
    return g
