"""End-to-end certification of the satisfiability/cycle-packing equivalence."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .cnf import (CnfInstance, cnf, incidence_is_planar, sat_dpll, sat_oracle)
from .gadgets import GadgetGraph, check_gadget_invariants, sat_to_vcp
from .vcp import PackingResult, vcp_oracle


@dataclass
class ReductionReport:
    instance: CnfInstance
    satisfiable: bool
    target: int
    packing: int
    planar_incidence: bool
    equivalent: bool
    strict_deficit: Optional[bool]   # None for satisfiable instances
    n_vertices: int

    @property
    def ok(self) -> bool:
        if not self.equivalent:
            return False
        if not self.satisfiable and not self.strict_deficit:
            return False
        return True


def verify_reduction(instance: CnfInstance, cap: int = 250) -> ReductionReport:
    sat = sat_oracle(instance)
    if sat != sat_dpll(instance):
        raise AssertionError("the two satisfiability oracles disagree")
    gadget = sat_to_vcp(instance)
    if gadget.planar_incidence:
        check_gadget_invariants(gadget)
    packing = vcp_oracle(gadget.graph, cap=cap)
    reached = packing.size >= gadget.target
    return ReductionReport(
        instance=instance,
        satisfiable=sat,
        target=gadget.target,
        packing=packing.size,
        planar_incidence=gadget.planar_incidence,
        equivalent=reached == sat,
        strict_deficit=None if sat else packing.size < gadget.target,
        n_vertices=gadget.graph.number_of_nodes(),
    )


def assignment_packing(instance: CnfInstance, gadget: GadgetGraph,
                       assignment: list[bool]) -> list[tuple]:
    """The canonical packing of size K_s + K_v + m realized by a satisfying
    assignment; independent witness for the forward direction."""
    from .cnf import _satisfies
    if not _satisfies(instance, assignment):
        raise ValueError("assignment does not satisfy the instance")
    g = gadget.graph
    cycles = []
    # ring squares of the chosen parity (even squares encode TRUE)
    for v, rk in gadget.k_v.items():
        parity = 0 if assignment[v - 1] else 1
        n = 2 * rk
        square_occs = gadget.attachments.get(v, {})
        for j in range(parity, n, 2):
            cycles.append(_ring_square(v, j, n, square_occs.get(j, ())))
    # wires: the freeing pattern for one chosen true literal per clause,
    # the non-freeing pattern elsewhere
    chosen: dict[int, int] = {}
    for c_idx, clause in enumerate(instance.clauses):
        for slot, lit in enumerate(clause):
            value = assignment[abs(lit) - 1]
            if (lit > 0) == value:
                chosen[c_idx] = slot
                break
    for (c_idx, slot), ks in gadget.k_s.items():
        freeing = chosen.get(c_idx) == slot
        # the freeing pattern starts at the ring pair and leaves the clause
        # pair free; every other wire uses the complementary pattern
        squares = range(0, 2 * ks, 2) if freeing else range(1, 2 * ks, 2)
        for q in squares:
            cycles.append(_wire_square(c_idx, slot, q, ks))
    # one middle five-cycle per clause, through the freed branch pair
    for c_idx, slot in chosen.items():
        cycles.append(_clause_middle(g, c_idx, slot))
    return cycles


def _ring_square(v, j, n, occs):
    o1, o2 = ("v", v, "o", j), ("v", v, "o", (j + 1) % n)
    i1, i2 = ("v", v, "i", j), ("v", v, "i", (j + 1) % n)
    rail = [o1]
    for c_idx, slot in occs:
        rail.extend([("pair", c_idx, slot, 0), ("pair", c_idx, slot, 1)])
    rail.append(o2)
    return tuple([i1] + rail + [i2])


def _wire_square(c_idx, slot, q, ks):
    rungs = []
    for r in (q, q + 1):
        if r == 0:
            rungs.append((("pair", c_idx, slot, 0), ("pair", c_idx, slot, 1)))
        elif r == 2 * ks:
            rungs.append((("cpair", c_idx, slot, 0), ("cpair", c_idx, slot, 1)))
        else:
            rungs.append((("w", c_idx, slot, r, 0), ("w", c_idx, slot, r, 1)))
    (a1, b1), (a2, b2) = rungs
    return (a1, b1, b2, a2)


def _clause_middle(g, c_idx, slot):
    z = ("c", c_idx, "z")
    c1, c2 = ("cpair", c_idx, slot, 0), ("cpair", c_idx, slot, 1)
    t_candidates = [t for t in g.neighbors(c1) if t[0] == "c"]
    t_a = t_candidates[0]
    t_candidates = [t for t in g.neighbors(c2) if t[0] == "c"]
    t_b = t_candidates[0]
    return (z, t_a, c1, c2, t_b)


def random_planar_instance(rng: random.Random, max_vars: int = 4,
                           max_clauses: int = 4) -> CnfInstance:
    """Random 3-CNF with planar incidence (rejection sampled)."""
    while True:
        n_vars = rng.randint(1, max_vars)
        n_clauses = rng.randint(1, max_clauses)
        clauses = []
        for _ in range(n_clauses):
            clause = tuple(rng.choice([1, -1]) * rng.randint(1, n_vars)
                           for _ in range(3))
            clauses.append(clause)
        used = {abs(l) for c in clauses for l in c}
        if used != set(range(1, n_vars + 1)):
            continue
        instance = cnf(n_vars, clauses)
        if incidence_is_planar(instance):
            return instance
