"""The set A+ of integer sequences, its triangulation model and the eta-matrix test.

A+ is the smallest set of sequences containing (0, 0) and closed under
``(..., c_{i-1}, c_i, ...) -> (..., c_{i-1}+1, 1, c_i+1, ...)`` for 1 < i <= n.
Members of length n correspond to triangulations of a convex n-gon.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

Mat2 = Tuple[int, int, int, int]  # row-major (a, b, c, d)

IDENTITY: Mat2 = (1, 0, 0, 1)
MINUS_IDENTITY: Mat2 = (-1, 0, 0, -1)

ENUMERATION_BOUND = 12


class BoundExceeded(ValueError):
    pass


def eta(a: int) -> Mat2:
    return (a, -1, 1, 0)


def matmul(x: Mat2, y: Mat2) -> Mat2:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def apply(m: Mat2, v: Tuple[int, int]) -> Tuple[int, int]:
    return (m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1])


def det(m: Mat2) -> int:
    return m[0] * m[3] - m[1] * m[2]


def eta_product(seq: Sequence[int]) -> Mat2:
    out = IDENTITY
    for c in seq:
        out = matmul(out, eta(c))
    return out


def parse_sequence(text: str) -> Tuple[int, ...]:
    """Parse "2,1,2,1" (spaces allowed)."""
    items = [t for t in text.replace(" ", "").split(",") if t]
    if not items:
        raise ValueError("empty sequence")
    return tuple(int(t) for t in items)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def is_aplus_by_reduction(seq: Sequence[int]) -> bool:
    """Membership in A+ by repeatedly removing an interior entry equal to 1."""
    c = list(seq)
    if len(c) < 2 or any(x < 0 for x in c):
        return False
    while len(c) > 2:
        n = len(c)
        if min(c) < 1 or sum(c) != 3 * n - 6:
            return False
        try:
            i = c.index(1, 1, n - 1)
        except ValueError:
            return False
        c = c[: i - 1] + [c[i - 1] - 1, c[i + 1] - 1] + c[i + 2:]
    return c == [0, 0]


def is_aplus_by_matrix(seq: Sequence[int]) -> bool:
    """eta(c_1)...eta(c_n) = -id and every eta(c_1)...eta(c_{k-1}) alpha_1 is in N_0^2."""
    if len(seq) < 2:
        return False
    prod = IDENTITY
    for c in seq:
        beta = (prod[0], prod[2])  # image of alpha_1
        if beta[0] < 0 or beta[1] < 0:
            return False
        prod = matmul(prod, eta(c))
    return prod == MINUS_IDENTITY


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of a convex n-gon with vertices 1..n, given by its diagonals."""

    n: int
    diagonals: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("polygon needs at least 2 vertices")
        for a, b in self.diagonals:
            if not (1 <= a < b <= self.n) or b - a < 2 or (a == 1 and b == self.n):
                raise ValueError(f"({a}, {b}) is not a diagonal of the {self.n}-gon")
        diags = sorted(self.diagonals)
        for k, (a, b) in enumerate(diags):
            for c, d in diags[k + 1:]:
                if a < c < b < d or c < a < d < b:
                    raise ValueError(f"diagonals ({a},{b}) and ({c},{d}) cross")
        if self.n >= 3 and len(self.diagonals) != self.n - 3:
            raise ValueError(f"a triangulation of an {self.n}-gon has {self.n - 3} diagonals")

    def triangles(self) -> List[Tuple[int, int, int]]:
        if self.n < 3:
            return []
        edges = set(self.diagonals) | {(k, k + 1) for k in range(1, self.n)} | {(1, self.n)}
        adj = {v: set() for v in range(1, self.n + 1)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        tris = []
        for a, b in edges:
            for c in adj[a] & adj[b]:
                if c > b:
                    tris.append((a, b, c))
        # in a triangulation every 3-cycle of the outerplanar graph is a face
        return sorted(set(tuple(sorted(t)) for t in tris))


def triangulation_to_sequence(t: Triangulation) -> Tuple[int, ...]:
    """c_i = number of triangles meeting vertex i."""
    counts = [0] * t.n
    for tri in t.triangles():
        for v in tri:
            counts[v - 1] += 1
    return tuple(counts)


def _triangulate(vertices: Tuple[int, ...]) -> Iterator[FrozenSet[Tuple[int, int]]]:
    # ear on the edge (first, last): triangle (first, k, last)
    if len(vertices) < 3:
        yield frozenset()
        return
    first, last = vertices[0], vertices[-1]
    for k in range(1, len(vertices) - 1):
        apex = vertices[k]
        own = set()
        if k > 1:
            own.add((first, apex))
        if k < len(vertices) - 2:
            own.add((apex, last))
        for left in _triangulate(vertices[: k + 1]):
            for right in _triangulate(vertices[k:]):
                yield frozenset(own | left | right)


def triangulations(n: int) -> Iterator[Triangulation]:
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        yield Triangulation(2, frozenset())
        return
    for diags in _triangulate(tuple(range(1, n + 1))):
        yield Triangulation(n, diags)


def enumerate_aplus(n: int, bound: int = ENUMERATION_BOUND) -> FrozenSet[Tuple[int, ...]]:
    """All members of A+ of length n, via triangulations of the n-gon."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds enumeration bound {bound}")
    return frozenset(triangulation_to_sequence(t) for t in triangulations(n))


def _base_patterns() -> List[Tuple[int, ...]]:
    pats = [(1, 1)]
    pats += [(1, 2, a) for a in (1, 2, 3)]
    pats += [(2, 1, b) for b in (3, 4, 5)]
    pats += [(1, 3, 1, b) for b in (3, 4, 5)]
    return pats


CLASCAR_PATTERNS: Tuple[Tuple[int, ...], ...] = tuple(_base_patterns())


@dataclass(frozen=True)
class PatternMatch:
    position: int  # 0-based start of the window
    pattern: Tuple[int, ...]  # the listed pattern (before transposition)
    transposed: bool

    @property
    def window(self) -> Tuple[int, ...]:
        return self.pattern[::-1] if self.transposed else self.pattern


def clascar_matches(seq: Sequence[int]) -> List[PatternMatch]:
    """Every contiguous occurrence of a listed pattern or its reversal."""
    seq = tuple(seq)
    out = []
    for pos in range(len(seq)):
        for pat in CLASCAR_PATTERNS:
            w = seq[pos: pos + len(pat)]
            if len(w) < len(pat):
                continue
            if w == pat:
                out.append(PatternMatch(pos, pat, False))
            elif w == pat[::-1]:
                out.append(PatternMatch(pos, pat, True))
    return out


def find_clascar_pattern(seq: Sequence[int]) -> Optional[PatternMatch]:
    matches = clascar_matches(seq)
    return matches[0] if matches else None


def root_sequence(c: Sequence[int], upto: int) -> List[Tuple[int, int]]:
    """beta_1..beta_upto via beta_{k+1} = c_k beta_k - beta_{k-1}, beta_0 = -alpha_2.

    c is extended periodically if shorter than needed.
    """
    if upto < 1:
        raise ValueError("upto must be at least 1")
    prev, cur = (0, -1), (1, 0)
    out = [cur]
    for k in range(1, upto):
        ck = c[(k - 1) % len(c)]
        prev, cur = cur, (ck * cur[0] - prev[0], ck * cur[1] - prev[1])
        out.append(cur)
    return out
