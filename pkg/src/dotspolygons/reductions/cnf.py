"""3-CNF instances, DIMACS io and two independent satisfiability oracles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx


class CnfError(ValueError):
    pass


@dataclass(frozen=True)
class CnfInstance:
    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]   # signed 1-based variable ids

    def __post_init__(self):
        for clause in self.clauses:
            if len(clause) != 3:
                raise CnfError("clauses must have exactly 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise CnfError(f"literal {lit} out of range")

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)


def cnf(n_vars: int, clauses) -> CnfInstance:
    return CnfInstance(n_vars=n_vars,
                       clauses=tuple(tuple(c) for c in clauses))


def parse_dimacs(text: str) -> CnfInstance:
    n_vars = None
    clauses = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise CnfError(f"bad problem line: {line}")
            n_vars = int(parts[2])
            continue
        lits = [int(tok) for tok in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if not lits:
            continue
        if len(lits) > 3:
            raise CnfError("clause wider than 3")
        while len(lits) < 3:
            lits.append(lits[-1])  # pad by repetition, preserving semantics
        clauses.append(tuple(lits))
    if n_vars is None:
        n_vars = max((abs(l) for c in clauses for l in c), default=0)
    return cnf(n_vars, clauses)


def to_dimacs(instance: CnfInstance) -> str:
    lines = [f"p cnf {instance.n_vars} {instance.n_clauses}"]
    for clause in instance.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def sat_oracle(instance: CnfInstance) -> bool:
    """Exhaustive assignment search."""
    if instance.n_vars > 24:
        raise CnfError("sat_oracle is capped at 24 variables")
    for bits in itertools.product((False, True), repeat=instance.n_vars):
        if _satisfies(instance, bits):
            return True
    return False


def _satisfies(instance: CnfInstance, bits) -> bool:
    for clause in instance.clauses:
        if not any((bits[abs(l) - 1]) == (l > 0) for l in clause):
            return False
    return True


def satisfying_assignment(instance: CnfInstance):
    for bits in itertools.product((False, True), repeat=instance.n_vars):
        if _satisfies(instance, bits):
            return list(bits)
    return None


def sat_dpll(instance: CnfInstance) -> bool:
    """Independent DPLL check used to cross-validate sat_oracle."""
    clauses = [frozenset(c) for c in instance.clauses]

    def solve(cls, assignment):
        cls = [c for c in cls if not any(l in assignment for l in c)]
        if not cls:
            return True
        if any(all(-l in assignment for l in c) for c in cls):
            return False
        units = [next(iter(c - {l for l in c if -l in assignment}))
                 for c in cls
                 if len(c - {l for l in c if -l in assignment}) == 1]
        if units:
            lit = units[0]
            return solve(cls, assignment | {lit})
        lit = next(iter(next(iter(cls))))
        return (solve(cls, assignment | {lit})
                or solve(cls, assignment | {-lit}))

    return solve(clauses, frozenset())


def incidence_graph(instance: CnfInstance) -> nx.Graph:
    """Bipartite variable-clause incidence with one node per occurrence so
    repeated literals stay planar-testable."""
    g = nx.Graph()
    for v in range(1, instance.n_vars + 1):
        g.add_node(("var", v))
    for c_idx, clause in enumerate(instance.clauses):
        g.add_node(("clause", c_idx))
        for slot, lit in enumerate(clause):
            occ = ("occ", c_idx, slot)
            g.add_node(occ)
            g.add_edge(("var", abs(lit)), occ)
            g.add_edge(occ, ("clause", c_idx))
    return g


def incidence_is_planar(instance: CnfInstance) -> bool:
    ok, _ = nx.check_planarity(incidence_graph(instance))
    return ok
