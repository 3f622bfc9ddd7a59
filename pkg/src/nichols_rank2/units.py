"""Multiplicative scalars of a field of characteristic p, kept as exponent vectors.

A :class:`Unit` stands for ``t_1^{e_1} ... t_r^{e_r} * z^{e_0}`` where ``z`` is a
fixed primitive N-th root of unity and the ``t_i`` are multiplicatively
independent parameters.  Everything the rank-two classification needs
(products, orders, vanishing of quantum integers) is decided from the
exponents, the torsion modulus N and the characteristic p alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence


class MismatchedGroup(ValueError):
    """Raised when units from different groups are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class UnitGroup:
    """The group Z^free_rank x Z/torsion inside k^* for a field of characteristic p."""

    p: int
    torsion: int = 1
    free_rank: int = 0

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")
        if self.torsion < 1:
            raise ValueError(f"torsion modulus must be positive, got {self.torsion}")
        if gcd(self.torsion, self.p) != 1:
            raise ValueError(
                f"torsion modulus {self.torsion} is not coprime to p={self.p}; "
                "there are no nontrivial p-th roots of unity in characteristic p"
            )
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")

    def unit(self, torsion: int = 0, free: Sequence[int] = ()) -> "Unit":
        free = tuple(int(e) for e in free) or (0,) * self.free_rank
        if len(free) != self.free_rank:
            raise ValueError(f"expected {self.free_rank} free exponents, got {len(free)}")
        return Unit(self, free, int(torsion) % self.torsion)

    def one(self) -> "Unit":
        return self.unit()

    def zeta(self, k: int = 1) -> "Unit":
        """The k-th power of the fixed primitive N-th root of unity."""
        return self.unit(torsion=k)

    def gen(self, i: int) -> "Unit":
        """The i-th free generator (0-based)."""
        free = [0] * self.free_rank
        free[i] = 1
        return self.unit(free=free)

    def minus_one(self) -> "Unit":
        """-1 as an element of the group; equal to 1 when p = 2."""
        if self.p == 2:
            return self.one()
        if self.torsion % 2:
            raise ValueError(f"-1 is not in the group: torsion modulus {self.torsion} is odd")
        return self.zeta(self.torsion // 2)

    def has_minus_one(self) -> bool:
        return self.p == 2 or self.torsion % 2 == 0

    def torsion_units(self):
        """All elements of the torsion part, ordered by exponent."""
        return [self.zeta(k) for k in range(self.torsion)]

    def to_json(self) -> dict:
        return {"p": self.p, "torsion": self.torsion, "free_rank": self.free_rank}

    @classmethod
    def from_json(cls, obj: dict) -> "UnitGroup":
        return cls(int(obj["p"]), int(obj.get("torsion", 1)), int(obj.get("free_rank", 0)))


@dataclass(frozen=True)
class Unit:
    group: UnitGroup
    free: tuple
    torsion: int

    def _check(self, other: "Unit"):
        if not isinstance(other, Unit) or other.group != self.group:
            raise MismatchedGroup(f"cannot combine units of {self.group} and {getattr(other, 'group', other)}")

    def __mul__(self, other: "Unit") -> "Unit":
        self._check(other)
        g = self.group
        free = tuple(a + b for a, b in zip(self.free, other.free))
        return Unit(g, free, (self.torsion + other.torsion) % g.torsion)

    def __pow__(self, k: int) -> "Unit":
        g = self.group
        return Unit(g, tuple(k * a for a in self.free), (k * self.torsion) % g.torsion)

    def __truediv__(self, other: "Unit") -> "Unit":
        return self * other.inv()

    def __neg__(self) -> "Unit":
        return self * self.group.minus_one()

    def inv(self) -> "Unit":
        return self ** -1

    def is_one(self) -> bool:
        return self.torsion == 0 and not any(self.free)

    def is_torsion(self) -> bool:
        return not any(self.free)

    def order(self) -> Optional[int]:
        """Multiplicative order, or None when the unit is not a root of unity."""
        if any(self.free):
            return None
        return self.group.torsion // gcd(self.group.torsion, self.torsion)

    def is_primitive_root(self, n: int) -> bool:
        return self.order() == n

    def qnum_is_zero(self, n: int) -> bool:
        """Whether the quantum integer 1 + u + ... + u^(n-1) vanishes in characteristic p.

        (n)_u = 0 iff n = 0, or u = 1 and p | n, or u != 1 and u^n = 1.
        """
        if n == 0:
            return True
        if self.is_one():
            return n % self.group.p == 0
        d = self.order()
        return d is not None and n % d == 0

    def sort_key(self):
        return (self.free, self.torsion)

    def __lt__(self, other: "Unit") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.free):
            if e:
                parts.append(f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}")
        if self.torsion:
            n = self.group.torsion
            if self.group.p != 2 and n % 2 == 0 and self.torsion == n // 2 and not parts:
                return "-1"
            parts.append(f"z{n}" if self.torsion == 1 else f"z{n}^{self.torsion}")
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": self.torsion}

    @classmethod
    def from_json(cls, group: UnitGroup, obj) -> "Unit":
        if isinstance(obj, int):
            return group.unit(torsion=obj)
        return group.unit(torsion=int(obj.get("torsion", 0)), free=obj.get("free", ()))


def min_neutralizing_power(q: Unit, target: Unit) -> Optional[int]:
    """Smallest m >= 0 with q^m * target = 1, or None if there is none."""
    q._check(target)
    n_tors = q.group.torsion
    # free part: m * f(q) = -f(target) over Z
    forced = None
    for a, b in zip(q.free, target.free):
        if a == 0:
            if b != 0:
                return None
            continue
        if (-b) % a:
            return None
        m = -b // a
        if forced is not None and m != forced:
            return None
        forced = m
    if forced is not None:
        if forced < 0:
            return None
        if (forced * q.torsion + target.torsion) % n_tors:
            return None
        return forced
    # torsion part: m * a = -b mod N
    a, b = q.torsion, (-target.torsion) % n_tors
    g = gcd(a, n_tors)
    if b % g:
        return None
    mod = n_tors // g
    if mod == 1:
        return 0
    return (b // g) * pow(a // g, -1, mod) % mod
