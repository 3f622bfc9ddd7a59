"""Reflections of rank-two Dynkin diagrams and the small semi-Cartan graph they generate."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .diagram import CartanMatrix, Diagram, NotIFinite, cartan_entry

DEFAULT_CAP = 10_000


class Diverged(RuntimeError):
    """Orbit exceeded the point cap."""

    def __init__(self, cap: int):
        super().__init__(f"orbit has more than {cap} points")
        self.cap = cap


class NotAllReflections(RuntimeError):
    """Some point of the orbit is not i-finite for some label i."""

    def __init__(self, point: Diagram, label: int, visited: Tuple[Diagram, ...] = ()):
        super().__init__(f"reflection {label} undefined at {point}")
        self.point = point
        self.label = label
        self.visited = visited  # points reached before the failure, all in one component


class CaseExhaustionFailure(AssertionError):
    pass


def reflection_cases(d: Diagram, i: int) -> Dict[str, Tuple]:
    """All applicable branches of the reflection formula, keyed c1/c2/c3.

    Each value is (new label of the other vertex, new edge label).
    """
    a = d.vertex(i)
    b = d.vertex(3 - i)
    q0 = d.q0
    m = -cartan_entry(a, q0)
    out = {}
    if q0 == a ** (-m):
        out["c1"] = (b, q0)
    if a.is_primitive_root(m + 1):
        out["c2"] = (a * b * q0 ** m, a ** 2 * q0.inv())
    if a.is_one():
        out["c3"] = (b * q0 ** m, q0.inv())
    return out


def reflect(d: Diagram, i: int) -> Diagram:
    """Dynkin diagram of R_i(M); vertex i keeps its label."""
    a = d.vertex(i)
    b = d.vertex(3 - i)
    q0 = d.q0
    m = -cartan_entry(a, q0)
    if q0 == a ** (-m):
        b2, q02 = b, q0
    elif a.is_primitive_root(m + 1):
        b2, q02 = a * b * q0 ** m, a ** 2 * q0.inv()
    elif a.is_one():
        b2, q02 = b * q0 ** m, q0.inv()
    else:
        raise CaseExhaustionFailure(f"no reflection case applies to {d} at {i}")
    return Diagram(a, b2, q02) if i == 1 else Diagram(b2, a, q02)


@dataclass(frozen=True)
class OrbitGraph:
    """Points of C_s(M) with the involutions r_1, r_2 stored as index tables."""

    points: Tuple[Diagram, ...]
    r1: Tuple[int, ...]
    r2: Tuple[int, ...]
    cartan: Tuple[CartanMatrix, ...]
    base: int = 0
    index: Dict[Diagram, int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.index is None:
            object.__setattr__(self, "index", {d: k for k, d in enumerate(self.points)})

    def __len__(self):
        return len(self.points)

    def r(self, i: int, x: int) -> int:
        return self.r1[x] if i == 1 else self.r2[x]

    def a(self, i: int, x: int) -> int:
        """Off-diagonal Cartan entry a_ij at point x."""
        c = self.cartan[x]
        return c.a12 if i == 1 else c.a21

    def edges(self) -> List[Tuple[int, int, int]]:
        """(x, label, y) for every point x and label with r_label(x) = y, loops included."""
        return [(x, i, self.r(i, x)) for x in range(len(self)) for i in (1, 2)]

    def exchange_edges(self) -> Dict[Tuple[int, int], List[int]]:
        """Non-loop edges of the exchange graph, one entry per unordered pair."""
        merged: Dict[Tuple[int, int], List[int]] = {}
        for x, i, y in self.edges():
            if x < y:
                merged.setdefault((x, y), []).append(i)
        return merged

    def rebased(self, base: int) -> "OrbitGraph":
        return OrbitGraph(self.points, self.r1, self.r2, self.cartan, base, self.index)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "base": self.base,
            "points": [d.to_json() for d in self.points],
            "cartan": [[c.a12, c.a21] for c in self.cartan],
            "edges": [list(e) for e in self.edges()],
        }


def orbit(d: Diagram, cap: int = DEFAULT_CAP) -> OrbitGraph:
    """Breadth-first closure of d under r_1, r_2.

    Raises Diverged past cap points and NotAllReflections if some reflection is undefined.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    points = [d]
    index = {d: 0}
    r1: List[int] = []
    r2: List[int] = []
    cartan: List[CartanMatrix] = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        pt = points[x]
        try:
            c = CartanMatrix(cartan_entry(pt.q11, pt.q0), cartan_entry(pt.q22, pt.q0))
        except NotIFinite:
            label = 1
            try:
                cartan_entry(pt.q11, pt.q0)
                label = 2
            except NotIFinite:
                pass
            raise NotAllReflections(pt, label, tuple(points)) from None
        cartan.append(c)
        for i, table in ((1, r1), (2, r2)):
            y = reflect(pt, i)
            k = index.get(y)
            if k is None:
                k = len(points)
                if k >= cap:
                    raise Diverged(cap)
                points.append(y)
                index[y] = k
                queue.append(k)
            table.append(k)
    return OrbitGraph(tuple(points), tuple(r1), tuple(r2), tuple(cartan), 0, index)


def exchange_graph_dot(g: OrbitGraph, name: str = "exchange") -> str:
    """Graphviz text; parallel edges share one edge with comma-joined labels, loops omitted."""
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for k, d in enumerate(g.points):
        attrs = f'label="{d.label()}"'
        if k == g.base:
            attrs += ", peripheries=2"
        lines.append(f"  X{k} [{attrs}];")
    for (x, y), labels in sorted(g.exchange_edges().items()):
        lines.append(f'  X{x} -- X{y} [label="{",".join(map(str, sorted(labels)))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
