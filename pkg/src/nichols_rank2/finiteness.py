"""Finiteness of rank-two Cartan graphs from characteristic sequences.

For a connected rank-two semi-Cartan graph with finitely many points, let n be
the period of r2 r1 at the base point and c_1..c_{2n} the characteristic
sequence.  With l = 6n - sum(c), the graph is a finite Cartan graph iff l > 0,
l | 12, (c_1..c_{12n/l}) is in A+ and the sequence is 12n/l-periodic.  Then the
positive real roots are the first 12n/l terms of the root sequence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import lcm
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .diagram import Diagram
from .reflection import DEFAULT_CAP, Diverged, NotAllReflections, OrbitGraph, orbit
from .sequences import is_aplus_by_matrix, root_sequence

Root = Tuple[int, int]

L_NON_POSITIVE = "l_non_positive"
L_NOT_DIVIDING_12 = "l_not_dividing_12"
NOT_APLUS = "not_aplus"
NOT_PERIODIC = "not_periodic"


class CapHit(RuntimeError):
    pass


@dataclass
class Verdict:
    status: str  # finite | infinite | not_all_reflections | inconclusive
    n: Optional[int] = None
    l: Optional[int] = None
    roots: Optional[int] = None
    sequence: Optional[Tuple[int, ...]] = None
    positive_roots: Optional[FrozenSet[Root]] = None
    reason: Optional[str] = None
    cap: Optional[int] = None
    graph: Optional[OrbitGraph] = field(default=None, repr=False, compare=False)

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    def to_json(self) -> dict:
        out: dict = {"schema_version": 1, "verdict": self.status}
        if self.status == "finite":
            out.update(n=self.n, l=self.l, roots=self.roots, sequence=list(self.sequence),
                       positive_roots=[list(r) for r in sorted(self.positive_roots)])
        elif self.status == "infinite":
            out.update(reason=self.reason, n=self.n, l=self.l)
            if self.sequence is not None:
                out["characteristic_window"] = list(self.sequence)
        elif self.status == "inconclusive":
            out["cap"] = self.cap
        if self.graph is not None:
            out["points"] = len(self.graph)
        return out


def characteristic_sequence(g: OrbitGraph, i: int = 1) -> Tuple[int, ...]:
    """One (r_j r_i)-period c_1..c_{2n} of the characteristic sequence at g.base."""
    j = 3 - i
    seq: List[int] = []
    x = g.base
    while True:
        seq.append(-g.a(i, x))
        y = g.r(i, x)
        seq.append(-g.a(j, y))
        x = g.r(j, y)
        if x == g.base:
            return tuple(seq)
        if len(seq) > 2 * len(g):
            raise AssertionError("r_j r_i is not a permutation of the orbit")


def _periodic(seq: Tuple[int, ...], k: int) -> int:
    return seq[(k - 1) % len(seq)]


def positive_roots(g: OrbitGraph, q: int) -> FrozenSet[Root]:
    """{beta_k} and {tau gamma_k}, k = 1..q, from the label-1 and label-2 root sequences."""
    c1 = characteristic_sequence(g, 1)
    c2 = characteristic_sequence(g, 2)
    betas = root_sequence(c1, q)
    gammas = root_sequence(c2, q)
    roots = set(betas) | {(b, a) for a, b in gammas}
    return frozenset(roots)


def decide_graph(g: OrbitGraph) -> Verdict:
    window = characteristic_sequence(g, 1)
    n = len(window) // 2
    l = 6 * n - sum(window)
    if l <= 0:
        return Verdict("infinite", n=n, l=l, reason=L_NON_POSITIVE, sequence=window, graph=g)
    if 12 % l:
        return Verdict("infinite", n=n, l=l, reason=L_NOT_DIVIDING_12, sequence=window, graph=g)
    q = 12 * n // l
    prefix = tuple(_periodic(window, k) for k in range(1, q + 1))
    if not is_aplus_by_matrix(prefix):
        return Verdict("infinite", n=n, l=l, reason=NOT_APLUS, sequence=window, graph=g)
    horizon = lcm(2 * n, q)
    if any(_periodic(window, k) != _periodic(prefix, k) for k in range(1, horizon + 1)):
        return Verdict("infinite", n=n, l=l, reason=NOT_PERIODIC, sequence=window, graph=g)
    roots = positive_roots(g, q)
    assert len(roots) == q and all(a >= 0 and b >= 0 for a, b in roots), roots
    return Verdict("finite", n=n, l=l, roots=q, sequence=prefix, positive_roots=roots, graph=g)


def decide_finite(d: Diagram, cap: int = DEFAULT_CAP) -> Verdict:
    """Decide whether the Weyl groupoid of the diagram's braided vector space is finite."""
    try:
        g = orbit(d, cap)
    except NotAllReflections:
        return Verdict("not_all_reflections")
    except Diverged:
        return Verdict("inconclusive", cap=cap)
    return decide_graph(g)


def _s(g: OrbitGraph, i: int, x: int):
    """s_i^x as a row-major 2x2 integer matrix: alpha_j -> alpha_j - a_ij alpha_i."""
    a = g.a(i, x)
    return (-1, -a, 0, 1) if i == 1 else (1, 0, -a, -1)


def _mul(x, y):
    a, b, c, d = x
    e, f, gg, h = y
    return (a * e + b * gg, a * f + b * h, c * e + d * gg, c * f + d * h)


def brute_force_real_roots(g: OrbitGraph, target: Optional[int] = None,
                           word_cap: int = 200) -> Set[Root]:
    """Real roots at target: images of alpha_1, alpha_2 under all morphisms into target.

    Breadth-first over pairs (source point, matrix).  A morphism w: y -> target
    extends to w s_i^{r_i(y)}: r_i(y) -> target.  Raises CapHit if new morphisms
    still appear at word length word_cap.
    """
    x0 = g.base if target is None else target
    start = (x0, (1, 0, 0, 1))
    seen = {start}
    frontier = [start]
    depth = 0
    while frontier:
        if depth >= word_cap:
            raise CapHit(f"morphisms into point {x0} not saturated after {word_cap} steps")
        depth += 1
        nxt = []
        for y, w in frontier:
            for i in (1, 2):
                z = g.r(i, y)
                state = (z, _mul(w, _s(g, i, z)))
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    roots = set()
    for _, w in seen:
        roots.add((w[0], w[2]))
        roots.add((w[1], w[3]))
    return roots


def all_real_roots(g: OrbitGraph, word_cap: int = 200) -> Dict[int, Set[Root]]:
    return {x: brute_force_real_roots(g, x, word_cap) for x in range(len(g))}
