"""Incremental planar subdivision over a fixed point set.

Keeps, for every vertex, its incident neighbors in counterclockwise order
(exact angular comparisons, no trigonometry). Faces are traced on demand by
the standard next-edge-clockwise-of-reverse walk; the face to the left of a
directed edge is the one being traced.
"""
from __future__ import annotations

from bisect import insort
from functools import cmp_to_key
from typing import Sequence

from .geometry import Point, walk_signed_area


def _delta_sign(a, o) -> tuple[int, int]:
    """Signs of (a.x - o.x, a.y - o.y) via integer cross-multiplication."""
    sx = a.x.numerator * o.x.denominator - o.x.numerator * a.x.denominator
    sy = a.y.numerator * o.y.denominator - o.y.numerator * a.y.denominator
    return ((sx > 0) - (sx < 0)), ((sy > 0) - (sy < 0))


def _angle_cmp(origin: Point, points: Sequence[Point], i: int, j: int) -> int:
    from .geometry import orient
    ai = points[i]
    aj = points[j]
    sxi, syi = _delta_sign(ai, origin)
    sxj, syj = _delta_sign(aj, origin)
    hi = 0 if (syi > 0 or (syi == 0 and sxi > 0)) else 1
    hj = 0 if (syj > 0 or (syj == 0 and sxj > 0)) else 1
    if hi != hj:
        return -1 if hi < hj else 1
    cross = orient(origin, ai, aj)
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


class Rotation:
    """Counterclockwise neighbor lists for each vertex of the subdivision."""

    def __init__(self, points: Sequence[Point], edges=()):
        self.points = points
        self.neighbors: dict[int, list[int]] = {}
        for i, j in edges:
            self.add_edge(i, j)

    def add_edge(self, i: int, j: int):
        self._insert(i, j)
        self._insert(j, i)

    def _insert(self, at: int, other: int):
        lst = self.neighbors.setdefault(at, [])
        key = cmp_to_key(lambda a, b: _angle_cmp(self.points[at], self.points, a, b))
        insort(lst, other, key=key)

    def next_on_face(self, u: int, v: int) -> tuple[int, int]:
        """Successor of directed edge u->v on the face to its left."""
        lst = self.neighbors[v]
        k = lst.index(u)
        w = lst[k - 1]  # previous in ccw order = next in clockwise order
        return v, w

    def walk_face(self, u: int, v: int) -> list[int]:
        """Vertex walk of the face left of u->v, starting at u."""
        walk = [u]
        cu, cv = u, v
        while True:
            walk.append(cv)
            cu, cv = self.next_on_face(cu, cv)
            if (cu, cv) == (u, v):
                break
        walk.pop()  # last vertex equals the starting u of the next lap
        return walk

    def face_area(self, walk: list[int]):
        return walk_signed_area([self.points[k] for k in walk])


class MasterRotation:
    """All-pairs ccw neighbor orders, computed once per point set; walks over
    any edge subset then need no exact arithmetic at all."""

    def __init__(self, points: Sequence[Point]):
        self.points = points
        n = len(points)
        self.order: list[list[int]] = []
        self.pos: list[dict[int, int]] = []
        key = lambda at: cmp_to_key(
            lambda a, b: _angle_cmp(points[at], points, a, b))
        for at in range(n):
            ring = sorted((k for k in range(n)
                           if k != at and points[k] != points[at]), key=key(at))
            self.order.append(ring)
            self.pos.append({k: idx for idx, k in enumerate(ring)})


class FilteredRotation:
    """Rotation view of a MasterRotation restricted to the drawn edges."""

    def __init__(self, master: MasterRotation, edges):
        self.master = master
        self.adj: dict[int, set[int]] = {}
        for i, j in edges:
            self.adj.setdefault(i, set()).add(j)
            self.adj.setdefault(j, set()).add(i)

    def next_on_face(self, u: int, v: int) -> tuple[int, int]:
        ring = self.master.order[v]
        active = self.adj[v]
        k = self.master.pos[v][u]
        m = len(ring)
        for step in range(1, m + 1):
            w = ring[(k - step) % m]
            if w in active:
                return v, w
        raise ValueError("dangling edge in face walk")

    walk_face = Rotation.walk_face


class DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)
