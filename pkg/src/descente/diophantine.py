"""Parametrizations of x0^2 + x1^2 = x2^2 and x0^2 + 2*x1^2 = x2^2.

Decompositions use closed-form arithmetic (half-sum / half-difference of the
hypotenuse and the odd leg); the brute-force searches live in the tests as
independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_arith import check_natural, common_prime_witness, coprime
from .errors import DomainError, NonPrimitiveError
from .proportions import exact_sqrt, split_coprime_double_square


@dataclass(frozen=True)
class PythTriple:
    x0: int
    x1: int
    x2: int

    def __post_init__(self):
        check_natural(self.x0, self.x1, self.x2)
        if self.x0**2 + self.x1**2 != self.x2**2:
            raise DomainError(
                f"({self.x0}, {self.x1}, {self.x2}) is not a Pythagorean triple"
            )

    def legs(self) -> tuple[int, int]:
        return self.x0, self.x1

    def is_primitive(self) -> bool:
        return coprime([self.x0, self.x1, self.x2])


@dataclass(frozen=True)
class Generators:
    """Coprime opposite-parity pair (p, q) with p > q; i marks the even leg."""

    i: int
    p: int
    q: int

    def __post_init__(self):
        check_natural(self.p, self.q)
        if self.i not in (0, 1):
            raise DomainError("leg index must be 0 or 1")
        if not coprime([self.p, self.q]):
            raise DomainError(f"{self.p} and {self.q} are not coprime")
        if (self.p + self.q) % 2 == 0:
            raise DomainError("exactly one of p, q must be odd")
        if not self.p > self.q:
            raise DomainError(f"need p > q, got p={self.p}, q={self.q}")


def decompose_sum_of_squares(t: PythTriple) -> tuple[int, int, int]:
    """Split a triple as x_i = 2*sqrt(a*b), x_{1-i} = a-b, x2 = a+b with a >= b.

    i is the index of an even leg (index 0 on ties, including the zero
    triple).  Neither a nor b need be a square.
    """
    i = 0 if t.x0 % 2 == 0 else 1
    odd_leg = t.x1 if i == 0 else t.x0
    a = (t.x2 + odd_leg) // 2
    b = (t.x2 - odd_leg) // 2
    even_leg = t.x0 if i == 0 else t.x1
    assert 4 * a * b == even_leg**2, "even-leg split failed"
    return i, a, b


def decompose_primitive_triple(t: PythTriple) -> Generators:
    """Recover the generators of a primitive triple: x_i = 2pq, x_{1-i} = p^2-q^2."""
    if (t.x0, t.x1, t.x2) == (0, 0, 0):
        raise DomainError("the zero triple has no generators")
    if not t.is_primitive():
        z = common_prime_witness([t.x0, t.x1, t.x2])
        raise NonPrimitiveError(
            f"({t.x0}, {t.x1}, {t.x2}) shares the prime factor {z}", z
        )
    i, a, b = decompose_sum_of_squares(t)
    p = exact_sqrt(a)
    q = exact_sqrt(b)
    assert p is not None and q is not None, "primitive split produced non-squares"
    return Generators(i=i, p=p, q=q)


def generate_triple(g: Generators) -> PythTriple:
    """The (always primitive) triple with 2pq at leg index g.i."""
    even = 2 * g.p * g.q
    odd = g.p**2 - g.q**2
    legs = (even, odd) if g.i == 0 else (odd, even)
    return PythTriple(legs[0], legs[1], g.p**2 + g.q**2)


def frenicle_xxxviii(t: PythTriple, v: int) -> tuple[int, int]:
    """Frenicle's Proposition XXXVIII: if a primitive triple's even leg is v^2,
    then x2 == (2*m^2)^2 + (k^2)^2 for coprime 2m, k.  Returns (m, k)."""
    check_natural(v)
    g = decompose_primitive_triple(t)
    even_leg = t.x0 if g.i == 0 else t.x1
    if even_leg != v * v:
        raise DomainError(f"even leg {even_leg} is not {v}^2")
    # 2pq == v^2 with p, q coprime: split {p, q} as {2m^2, k^2}.
    m, k, _ = split_coprime_double_square(2, g.p, g.q, v)
    assert (2 * m**2) ** 2 + (k**2) ** 2 == t.x2
    assert (m == 0) == (even_leg == 0)
    return m, k


def decompose_two_square(x0: int, x1: int, x2: int) -> tuple[int, int]:
    """Split x0^2 + 2*x1^2 == x2^2 as x0 = a-b, 2ab = x1^2, x2 = a+b with a >= b."""
    check_natural(x0, x1, x2)
    if x0**2 + 2 * x1**2 != x2**2:
        raise DomainError(f"{x0}^2 + 2*{x1}^2 != {x2}^2")
    a = (x2 + x0) // 2
    b = (x2 - x0) // 2
    assert 2 * a * b == x1**2, "two-square split failed"
    return a, b


def decompose_primitive_two_square(x0: int, x1: int, x2: int) -> tuple[int, int]:
    """Parametrize a coprime solution of x0^2 + 2*x1^2 == x2^2.

    Returns (m, k) with 2m, k coprime, 2m^2 != k^2, x0 == |2m^2 - k^2|,
    x1 == 2mk, and x2 == 2m^2 + k^2.
    """
    a, b = decompose_two_square(x0, x1, x2)
    if not coprime([x0, x1, x2]):
        z = common_prime_witness([x0, x1, x2])
        raise NonPrimitiveError(f"({x0}, {x1}, {x2}) shares the prime factor {z}", z)
    m, k, _ = split_coprime_double_square(2, a, b, x1)
    assert 2 * m**2 != k**2
    assert x0 == abs(2 * m**2 - k**2) and x1 == 2 * m * k and x2 == 2 * m**2 + k**2
    return m, k


def primitive_triples_up_to(max_x2: int):
    """Yield every primitive PythTriple with positive legs and x2 <= max_x2,
    with its Generators, ordered by (x2, smaller leg)."""
    check_natural(max_x2)
    found = []
    p = 2
    while p * p + 1 <= max_x2:
        for q in range(1 if p % 2 == 0 else 2, p, 2):
            if p * p + q * q > max_x2:
                break
            if math.gcd(p, q) != 1:
                continue
            g = Generators(i=0, p=p, q=q)
            found.append((generate_triple(g), g))
        p += 1
    found.sort(key=lambda tg: (tg[0].x2, min(tg[0].legs())))
    return found
