"""Rank-two Dynkin diagrams of diagonal braidings and their Cartan matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .units import Unit, UnitGroup, min_neutralizing_power


class NotIFinite(ValueError):
    """The adjoint action of x_i on x_j is never nilpotent; r_i is undefined."""


@dataclass(frozen=True)
class Diagram:
    """Vertex labels q11, q22 and edge label q0 = q12*q21.  Vertices are ordered."""

    q11: Unit
    q22: Unit
    q0: Unit

    def __post_init__(self):
        g = self.q11.group
        if self.q22.group != g or self.q0.group != g:
            raise ValueError("all labels of a diagram must live in the same unit group")

    @property
    def group(self) -> UnitGroup:
        return self.q11.group

    @property
    def p(self) -> int:
        return self.q11.group.p

    def vertex(self, i: int) -> Unit:
        return self.q11 if i == 1 else self.q22

    def key(self):
        return (self.q11.free, self.q11.torsion, self.q22.free, self.q22.torsion,
                self.q0.free, self.q0.torsion)

    def __lt__(self, other: "Diagram") -> bool:
        return self.key() < other.key()

    def is_torsion(self) -> bool:
        return self.q11.is_torsion() and self.q22.is_torsion() and self.q0.is_torsion()

    def label(self) -> str:
        return f"{self.q11} -[{self.q0}]- {self.q22}"

    def __str__(self) -> str:
        return self.label()

    def to_json(self) -> dict:
        out = self.group.to_json()
        out.update(q11=self.q11.to_json(), q22=self.q22.to_json(), q0=self.q0.to_json())
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Diagram":
        g = UnitGroup.from_json(obj)
        return cls(Unit.from_json(g, obj["q11"]), Unit.from_json(g, obj["q22"]),
                   Unit.from_json(g, obj["q0"]))


@dataclass(frozen=True)
class CartanMatrix:
    a12: int
    a21: int

    def __post_init__(self):
        assert self.a12 <= 0 and self.a21 <= 0
        assert (self.a12 == 0) == (self.a21 == 0), "generalized Cartan matrix needs a12=0 <=> a21=0"

    def entry(self, i: int, j: int) -> int:
        if i == j:
            return 2
        return self.a12 if i == 1 else self.a21

    def rows(self):
        return ((2, self.a12), (self.a21, 2))


def cartan_entry(qii: Unit, q0: Unit, p: Optional[int] = None) -> int:
    """a_ij = -m with m minimal such that (m+1)_{q_ii} (q_ii^m q0 - 1) = 0.

    Raises NotIFinite when no such m exists.
    """
    if p is None:
        p = qii.group.p
    candidates = []
    m1 = min_neutralizing_power(qii, q0)
    if m1 is not None:
        candidates.append(m1)
    if qii.is_one():
        candidates.append(p - 1)
    else:
        d = qii.order()
        if d is not None:
            candidates.append(d - 1)
    if not candidates:
        raise NotIFinite(f"no m with (m+1)_q (q^m q0 - 1) = 0 for q={qii}, q0={q0}")
    return -min(candidates)


def cartan_matrix(d: Diagram) -> CartanMatrix:
    return CartanMatrix(cartan_entry(d.q11, d.q0), cartan_entry(d.q22, d.q0))


def tau(d: Diagram) -> Diagram:
    """Swap the two vertices."""
    return Diagram(d.q22, d.q11, d.q0)
