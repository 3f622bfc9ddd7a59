"""Explicit finite fields F_{p^k}, used only as an independent check of the unit arithmetic.

Elements are tuples of k coefficients over F_p (constant term first), reduced
modulo a monic irreducible polynomial found by scanning candidates in
lexicographic order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd, lcm
from typing import Sequence

from .units import Unit, UnitGroup


class NoEmbedding(ValueError):
    pass


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, f, p):
    a = _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    return a


def poly_powmod(a, e, f, p):
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p) -> bool:
    """Irreducibility of a monic f over F_p via gcd(f, x^(p^i) - x) = 1 for i <= deg/2."""
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(1, k // 2 + 1):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(f, poly_sub(xp, x, p), p)) > 1:
            return False
    return True


def _candidates(p, k):
    # monic polynomials of degree k, lexicographic from the x^(k-1) coefficient down;
    # a zero constant term means x divides f
    for lower in product(range(p), repeat=k):
        if k == 1 or lower[-1]:
            yield list(lower[::-1]) + [1]


@lru_cache(maxsize=None)
def irreducible_polynomial(p: int, k: int) -> tuple:
    for f in _candidates(p, k):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


def embedding_degree(p: int, n: int) -> int:
    """Minimal k with n | p^k - 1."""
    if gcd(n, p) != 1:
        raise NoEmbedding(f"{n} is not coprime to {p}")
    k, acc = 1, p % n
    while acc != 1 % n:
        acc = acc * p % n
        k += 1
    return k


def _prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """F_{p^k} with elements as coefficient tuples of length k."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.modulus = irreducible_polynomial(p, k)
        self.size = p ** k

    def elem(self, coeffs) -> tuple:
        c = poly_mod(list(coeffs), list(self.modulus), self.p)
        return tuple(c + [0] * (self.k - len(c)))

    @property
    def one(self):
        return self.elem([1])

    @property
    def zero(self):
        return self.elem([])

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        return self.elem(poly_mul(_trim(a), _trim(b), self.p))

    def pow(self, a, e):
        if e < 0:
            a, e = self.pow(a, self.size - 2), -e
        return self.elem(poly_powmod(_trim(a), e, list(self.modulus), self.p)) if e else self.one

    def order(self, a, multiple: int = None) -> int:
        """Multiplicative order; pass a known multiple to avoid factoring p^k - 1."""
        n = self.size - 1 if multiple is None else multiple
        for r in _prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == self.one:
                n //= r
        return n

    def primitive_root_of_unity(self, n: int):
        """First element (in lexicographic scan) whose power has order exactly n."""
        if (self.size - 1) % n:
            raise NoEmbedding(f"{n} does not divide {self.size} - 1")
        e = (self.size - 1) // n
        for code in range(1, self.size):
            coeffs, c = [], code
            for _ in range(self.k):
                coeffs.append(c % self.p)
                c //= self.p
            h = self.pow(tuple(coeffs), e)
            if self.order(h, n) == n:
                return h
        raise AssertionError("unreachable: the multiplicative group is cyclic")


class Realization:
    """A concrete homomorphism from a UnitGroup into some F_{p^k}.

    The torsion generator goes to a primitive N-th root; free generator i goes
    to a primitive root of order free_orders[i] (a stand-in for a generic value).
    """

    def __init__(self, group: UnitGroup, free_orders: Sequence[int] = ()):
        if len(free_orders) != group.free_rank:
            raise ValueError("need one order per free generator")
        self.group = group
        big = lcm(group.torsion, *free_orders) if free_orders else group.torsion
        if gcd(big, group.p) != 1:
            raise NoEmbedding(f"order {big} is not coprime to p={group.p}")
        self.field = FiniteField(group.p, embedding_degree(group.p, big))
        omega = self.field.primitive_root_of_unity(big)
        self.zeta = self.field.pow(omega, big // group.torsion)
        self.free_images = [self.field.pow(omega, big // o) for o in free_orders]

    def __call__(self, u: Unit):
        if u.group != self.group:
            raise ValueError("unit from a different group")
        out = self.field.pow(self.zeta, u.torsion)
        for img, e in zip(self.free_images, u.free):
            out = self.field.mul(out, self.field.pow(img, e))
        return out

    def qnum(self, u: Unit, n: int):
        """1 + u + ... + u^(n-1) evaluated in the field."""
        x = self(u)
        acc, term = self.field.zero, self.field.one
        for _ in range(n):
            acc = self.field.add(acc, term)
            term = self.field.mul(term, x)
        return acc


def realize_in_finite_field(group: UnitGroup, u: Unit, free_orders: Sequence[int] = ()):
    return Realization(group, free_orders)(u)
