"""Maximum vertex-disjoint cycle packing size via dynamic programming over a
tree decomposition. Exact for any graph; fast when the width is small, as it
always is for the gadget graphs (ladders, rings and small cores glued along
two-cuts).

A state over a bag records, for each bag vertex, how many of its (eventual)
cycle edges are already chosen: degree 0 or 2 explicitly, degree 1 through a
pairing that names the bag vertex its partial path currently ends at. Every
graph edge is processed at exactly one decomposition node, so paths and
cycles can never reuse an edge. Values count completed cycles.
"""
from __future__ import annotations

import itertools
from typing import Optional

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in


class TwdpError(ValueError):
    pass


def max_cycle_packing_tw(g: nx.Graph, width_cap: int = 12) -> Optional[int]:
    """Exact maximum packing size, or None if the decomposition is too wide."""
    if g.number_of_edges() == 0:
        return 0
    node_id = {v: k for k, v in enumerate(sorted(g.nodes(), key=str))}
    h = nx.relabel_nodes(g, node_id, copy=True)
    width, decomp = treewidth_min_fill_in(h)
    if width > width_cap:
        return None
    bags = list(decomp.nodes())
    if not bags:
        return 0
    root = bags[0]
    children: dict = {b: [] for b in bags}
    parent = {root: None}
    order = [root]
    for b in order:
        for nb in decomp.neighbors(b):
            if nb not in parent:
                parent[nb] = b
                children[b].append(nb)
                order.append(nb)
    # assign every edge to the first bag (in BFS order) containing it
    assigned: dict = {b: [] for b in bags}
    for u, v in h.edges():
        for b in order:
            if u in b and v in b:
                assigned[b].append((u, v))
                break
        else:
            raise TwdpError("edge not covered by any bag")

    def solve(b) -> dict:
        table = None
        for child in children[b]:
            sub = solve(child)
            sub = _lift(sub, set(child), set(b))
            table = sub if table is None else _join(table, sub)
        if table is None:
            table = {_canon({v: 0 for v in b}, {}): 0}
        for u, v in assigned[b]:
            table = _process_edge(table, u, v)
        return table

    table = solve(root)
    for v in sorted(root):
        table = _forget(table, v)
    best = table.get(((), ()), None)
    if best is None:
        raise TwdpError("empty final table")
    return best


# -- state plumbing ----------------------------------------------------------

def _canon(status: dict, pairing: dict):
    return (tuple(sorted(status.items())),
            tuple(sorted({tuple(sorted((a, b))) for a, b in pairing.items()})))


def _thaw(key):
    status = dict(key[0])
    pairing = {}
    for a, b in key[1]:
        pairing[a] = b
        pairing[b] = a
    return status, pairing


def _best(table: dict, key, value: int):
    if value > table.get(key, -1):
        table[key] = value


def _lift(table: dict, child_bag: set, bag: set) -> dict:
    out = table
    for v in sorted(child_bag - bag):
        out = _forget(out, v)
    for v in sorted(bag - child_bag):
        nxt = {}
        for key, count in out.items():
            status, pairing = _thaw(key)
            status[v] = 0
            _best(nxt, _canon(status, pairing), count)
        out = nxt
    return out


def _forget(table: dict, v) -> dict:
    out = {}
    for key, count in table.items():
        status, pairing = _thaw(key)
        if v in pairing:
            continue  # a dangling path end can never close
        status.pop(v, None)
        _best(out, _canon(status, pairing), count)
    return out


def _degree(v, status, pairing) -> int:
    if v in pairing:
        return 1
    return status[v]


def _process_edge(table: dict, u, v) -> dict:
    out = {}
    for key, count in table.items():
        _best(out, key, count)  # skip the edge
        status, pairing = _thaw(key)
        du = _degree(u, status, pairing)
        dv = _degree(v, status, pairing)
        if du >= 2 or dv >= 2:
            continue
        closed = 0
        if du == 1 and dv == 1:
            if pairing[u] == v:
                closed = 1  # the path u..v closes into a cycle
                del pairing[u], pairing[v]
                status[u] = status[v] = 2
            else:
                a, b = pairing[u], pairing[v]
                del pairing[u], pairing[v]
                pairing[a] = b
                pairing[b] = a
                status[u] = status[v] = 2
        elif du == 1:
            a = pairing.pop(u)
            pairing.pop(a, None)
            status[u] = 2
            pairing[a] = v
            pairing[v] = a
            status.pop(v, None)
            status.pop(a, None)
        elif dv == 1:
            a = pairing.pop(v)
            pairing.pop(a, None)
            status[v] = 2
            pairing[a] = u
            pairing[u] = a
            status.pop(u, None)
            status.pop(a, None)
        else:
            pairing[u] = v
            pairing[v] = u
            status.pop(u, None)
            status.pop(v, None)
        _best(out, _canon(status, pairing), count + closed)
    return out


def _join(left: dict, right: dict) -> dict:
    out = {}
    for key_l, count_l in left.items():
        status_l, pairing_l = _thaw(key_l)
        bag = set(status_l) | set(pairing_l)
        segs_l = {tuple(sorted((a, b))) for a, b in pairing_l.items()}
        for key_r, count_r in right.items():
            status_r, pairing_r = _thaw(key_r)
            merged = _fuse(bag, status_l, pairing_l, segs_l,
                           status_r, pairing_r)
            if merged is None:
                continue
            key, closed = merged
            _best(out, key, count_l + count_r + closed)
    return out


def _fuse(bag, status_l, pairing_l, segs_l, status_r, pairing_r):
    deg = {}
    for v in bag:
        d = _degree(v, status_l, pairing_l) + _degree(v, status_r, pairing_r)
        if d > 2:
            return None
        deg[v] = d
    segs_r = {tuple(sorted((a, b))) for a, b in pairing_r.items()}
    # multigraph on bag: each segment is one edge; components are paths or
    # cycles since every vertex carries at most two segment ends
    adj: dict = {}
    for tag, segs in (("L", segs_l), ("R", segs_r)):
        for a, b in segs:
            adj.setdefault(a, []).append((b, tag))
            adj.setdefault(b, []).append((a, tag))
    status = {}
    pairing = {}
    closed = 0
    visited_segs = set()
    seen = set()
    for v in bag:
        if v in adj:
            continue
        status[v] = deg[v]  # 0 or 2 (no open segment ends here)
    for start in sorted(adj):
        if start in seen or len(adj[start]) != 1:
            continue
        # walk a path component from an end
        seen.add(start)
        current, prev_tag = start, None
        while True:
            step = [(w, tag) for (w, tag) in adj[current]
                    if (tuple(sorted((current, w))), tag) not in visited_segs]
            if not step:
                break
            w, tag = step[0]
            visited_segs.add((tuple(sorted((current, w))), tag))
            seen.add(w)
            current = w
        end = current
        if end == start:
            return None
        pairing[start] = end
        pairing[end] = start
    for start in sorted(adj):
        if start in seen:
            continue
        # remaining components are closed fused cycles
        seen.add(start)
        current = start
        while True:
            step = [(w, tag) for (w, tag) in adj[current]
                    if (tuple(sorted((current, w))), tag) not in visited_segs]
            if not step:
                break
            w, tag = step[0]
            visited_segs.add((tuple(sorted((current, w))), tag))
            seen.add(w)
            current = w
        closed += 1
    for v in bag:
        if v in pairing:
            continue
        status[v] = deg[v]
    return _canon(status, pairing), closed
