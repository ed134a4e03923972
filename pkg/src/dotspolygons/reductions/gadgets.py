"""Planar 3-SAT to vertex-disjoint cycle packing.

Gadget shapes:
  variable ring   a circular ladder of 2*k_v interlocked squares; a maximum
                  selection picks every other square, and the two alternating
                  patterns encode true/false. Squares that host a literal get
                  their outer rail subdivided into an attachment pair.
  wire            a ladder of 2*k_s squares whose end rungs are identified
                  with a ring attachment pair and a clause branch pair; with
                  the last square unselected a maximum selection is forced to
                  start at the ring end, so the bit propagates.
  clause          a subdivided tetrahedron star: center z, spokes to t0..t2,
                  and each outer edge split by a branch pair. The three
                  five-cycles through z pairwise share a spoke, so at most
                  one can be picked, and each needs its own branch pair free.

Every attachment shares vertices (a whole edge), never just a connector, so
vertex-disjointness carries the logic. Attachment order follows a planar
embedding of the occurrence-subdivided incidence graph, keeping the output
planar.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .cnf import CnfInstance, incidence_graph


class GadgetError(ValueError):
    pass


@dataclass
class GadgetGraph:
    graph: nx.Graph
    labels: dict
    k_s: dict            # (clause, slot) -> k_s of that wire
    k_v: dict            # variable -> k_v of its ring
    n_clauses: int
    planar_incidence: bool
    attachments: dict = None   # variable -> {ring square -> [(clause, slot)]}

    @property
    def big_k_s(self) -> int:
        return sum(self.k_s.values())

    @property
    def big_k_v(self) -> int:
        return sum(self.k_v.values())

    @property
    def target(self) -> int:
        return self.big_k_s + self.big_k_v + self.n_clauses


def _rotation_orders(instance: CnfInstance):
    """Cyclic neighbor order for variable and clause nodes, from a planar
    embedding of the incidence graph when one exists."""
    g = incidence_graph(instance)
    planar, embedding = nx.check_planarity(g)
    orders = {}
    if planar:
        data = embedding.get_data()
        for node, neigh in data.items():
            orders[node] = neigh
    else:
        for node in g.nodes():
            orders[node] = list(g.neighbors(node))
    return planar, orders


def sat_to_vcp(instance: CnfInstance, k_s: int = 1,
               k_v: Optional[dict] = None) -> GadgetGraph:
    """Build the gadget graph whose maximum vertex-disjoint cycle packing
    reaches K_s + K_v + m exactly when the formula is satisfiable."""
    if k_s < 1:
        raise GadgetError("k_s must be at least 1")
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for c_idx, clause in enumerate(instance.clauses):
        for slot, lit in enumerate(clause):
            occurrences.setdefault(abs(lit), []).append((c_idx, slot))
    for v in range(1, instance.n_vars + 1):
        if v not in occurrences:
            raise GadgetError(f"variable {v} occurs in no clause")

    planar, orders = _rotation_orders(instance)

    g = nx.Graph()
    labels: dict = {}
    ring_k_v: dict[int, int] = {}
    wire_k_s: dict[tuple[int, int], int] = {}
    attachments: dict = {}

    # ring square assigned to each occurrence, and its parity
    attach_square: dict[tuple[int, int], int] = {}

    for v, occs in occurrences.items():
        # occurrences in planar rotation order around the variable; runs of
        # equal polarity share one ring square (several pairs on one rail)
        order = [node for node in orders[("var", v)]]
        ordered_occs = [(node[1], node[2]) for node in order]
        runs: list[tuple[int, list]] = []
        for c_idx, slot in ordered_occs:
            lit = instance.clauses[c_idx][slot]
            # true selects even squares; a positive literal attaches to an odd
            # square so its wire frees the clause exactly when v is true
            parity = 1 if lit > 0 else 0
            if runs and runs[-1][0] == parity:
                runs[-1][1].append((c_idx, slot))
            else:
                runs.append((parity, [(c_idx, slot)]))
        cursor = 0
        square_occs: dict[int, list] = {}
        for parity, run in runs:
            if cursor % 2 != parity:
                cursor += 1
            square_occs[cursor] = run
            cursor += 1
        rk = max(2, (cursor + 1) // 2, (k_v or {}).get(v, 0))
        ring_k_v[v] = rk
        for square, run in square_occs.items():
            for occ in run:
                attach_square[occ] = square
        attachments[v] = square_occs
        _build_ring(g, labels, v, rk, square_occs)

    for c_idx in range(instance.n_clauses):
        order = [node for node in orders[("clause", c_idx)]]
        # rings and clauses face each other, so one boundary traversal must
        # be reversed for the glued drawing to stay planar
        branch_occs = [(node[1], node[2]) for node in reversed(order)]
        _build_clause(g, labels, c_idx, branch_occs)

    for c_idx, clause in enumerate(instance.clauses):
        for slot, lit in enumerate(clause):
            wire_k_s[(c_idx, slot)] = k_s
            _build_wire(g, labels, c_idx, slot, k_s)

    return GadgetGraph(graph=g, labels=labels, k_s=wire_k_s, k_v=ring_k_v,
                       n_clauses=instance.n_clauses,
                       planar_incidence=planar,
                       attachments=attachments)


def _pair(c_idx, slot, end):
    # attachment pair shared by a wire's first rung and a ring rail
    return ("pair", c_idx, slot, end)


def _cpair(c_idx, slot, end):
    # branch pair shared by a wire's last rung and a clause outer edge
    return ("cpair", c_idx, slot, end)


def _build_ring(g, labels, v, rk, square_occs):
    """Circular ladder of 2*rk squares; a square hosting literals gets its
    outer rail subdivided into one attachment pair per literal."""
    n = 2 * rk
    outer = [("v", v, "o", j) for j in range(n)]
    inner = [("v", v, "i", j) for j in range(n)]
    for j in range(n):
        labels[outer[j]] = {"kind": "variable", "var": v, "pos": ("o", j)}
        labels[inner[j]] = {"kind": "variable", "var": v, "pos": ("i", j)}
        g.add_edge(inner[j], inner[(j + 1) % n])
        g.add_edge(outer[j], inner[j])
    for j in range(n):
        a, b = outer[j], outer[(j + 1) % n]
        stops = [a]
        for c_idx, slot in square_occs.get(j, ()):
            m1, m2 = _pair(c_idx, slot, 0), _pair(c_idx, slot, 1)
            labels[m1] = {"kind": "wire", "clause": c_idx, "slot": slot,
                          "pos": ("rung", 0, 0)}
            labels[m2] = {"kind": "wire", "clause": c_idx, "slot": slot,
                          "pos": ("rung", 0, 1)}
            stops.extend([m1, m2])
        stops.append(b)
        for s, t in zip(stops, stops[1:]):
            g.add_edge(s, t)


def _build_clause(g, labels, c_idx, branch_occs):
    """Center, three spokes, and three outer edges each subdivided by the
    branch pair of one attached wire."""
    if len(branch_occs) != 3:
        raise GadgetError(f"clause {c_idx} needs exactly 3 branches")
    z = ("c", c_idx, "z")
    ts = [("c", c_idx, "t", a) for a in range(3)]
    labels[z] = {"kind": "clause", "clause": c_idx, "pos": "z"}
    for a in range(3):
        labels[ts[a]] = {"kind": "clause", "clause": c_idx, "pos": ("t", a)}
        g.add_edge(z, ts[a])
    for a in range(3):
        occ_c, occ_slot = branch_occs[a]
        if occ_c != c_idx:
            raise GadgetError("branch occurrence belongs to another clause")
        c1, c2 = _cpair(c_idx, occ_slot, 0), _cpair(c_idx, occ_slot, 1)
        labels[c1] = {"kind": "wire", "clause": c_idx, "slot": occ_slot,
                      "pos": ("rung", -1, 0)}
        labels[c2] = {"kind": "wire", "clause": c_idx, "slot": occ_slot,
                      "pos": ("rung", -1, 1)}
        g.add_edge(ts[a], c1)
        g.add_edge(c1, c2)
        g.add_edge(c2, ts[(a + 1) % 3])


def _build_wire(g, labels, c_idx, slot, k_s):
    """Ladder of 2*k_s squares between the ring pair and the clause pair."""
    n_rungs = 2 * k_s + 1
    rungs = []
    for r in range(n_rungs):
        if r == 0:
            rungs.append((_pair(c_idx, slot, 0), _pair(c_idx, slot, 1)))
        elif r == n_rungs - 1:
            rungs.append((_cpair(c_idx, slot, 0), _cpair(c_idx, slot, 1)))
        else:
            a = ("w", c_idx, slot, r, 0)
            b = ("w", c_idx, slot, r, 1)
            labels[a] = {"kind": "wire", "clause": c_idx, "slot": slot,
                         "pos": ("rung", r, 0)}
            labels[b] = {"kind": "wire", "clause": c_idx, "slot": slot,
                         "pos": ("rung", r, 1)}
            g.add_edge(a, b)
            rungs.append((a, b))
    for r in range(n_rungs - 1):
        g.add_edge(rungs[r][0], rungs[r + 1][0])
        g.add_edge(rungs[r][1], rungs[r + 1][1])


def check_gadget_invariants(gadget: GadgetGraph):
    g = gadget.graph
    bad = [v for v in g.nodes() if g.degree(v) > 3]
    if bad:
        raise GadgetError(f"degree bound violated at {bad[:3]}")
    planar, _ = nx.check_planarity(g)
    if not planar:
        raise GadgetError("gadget graph is not planar")
