"""Exact natural-number arithmetic and Book VII primitives.

Naturals are plain Python ints restricted to values >= 0; every operation
validates its arguments and raises DomainError outside its precondition.
Divisibility follows the classical convention: 1 is the minimum and 0 the
maximum of the divides ordering, so divides(x, 0) is always true.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


def check_natural(*values: int) -> None:
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DomainError(f"expected a natural number, got {v!r}")


def divides(x: int, y: int) -> bool:
    """True iff some k satisfies k*x == y (so every x divides 0)."""
    check_natural(x, y)
    if x == 0:
        return y == 0
    return y % x == 0


def gcd(x: int, y: int) -> int:
    """Greatest common divisor; undefined (DomainError) for (0, 0)."""
    check_natural(x, y)
    if x == 0 and y == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(x, y)


def is_prime(p: int) -> bool:
    """Deterministic trial division up to the integer square root."""
    check_natural(p)
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def least_prime_divisor(x: int) -> int:
    """Smallest prime dividing x, found by descending through proper divisors.

    Follows the composite-number reduction: repeatedly replace x by a proper
    divisor until a prime remains.  Dividing out the largest prime factor at
    each step makes the walk land on the least prime.  The same walk backs
    the builtin 'vii31' descent instance.
    """
    check_natural(x)
    if x in (0, 1):
        raise DomainError(f"least_prime_divisor undefined for {x}")
    walk = x
    while not is_prime(walk):
        walk //= _largest_prime_factor(walk)
    return walk


def proper_divisor_step(x: int) -> int | None:
    """One step of the VII.31 divisor walk: x over its largest prime factor.

    None for primes and for x <= 1 (nothing to descend to).
    """
    check_natural(x)
    if x <= 1 or is_prime(x):
        return None
    return x // _largest_prime_factor(x)


def _largest_prime_factor(x: int) -> int:
    largest = 1
    n = x
    d = 2
    while d * d <= n:
        while n % d == 0:
            largest = d
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        largest = n
    return largest


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization: (prime, exponent) pairs, primes increasing."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise DomainError("factorization primes must be strictly increasing")
        for p, e in self.factors:
            if e < 1:
                raise DomainError(f"exponent of {p} must be positive")
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def factorize(x: int) -> Factorization:
    """Canonical factorization by repeated least-prime division; factorize(1) is empty."""
    check_natural(x)
    if x == 0:
        raise DomainError("cannot factorize 0")
    factors = []
    n = x
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                e += 1
                n //= d
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return Factorization(tuple(factors))


def valuation(p: int, x: int) -> int:
    """Largest n with p^n dividing x."""
    check_natural(p, x)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if x == 0:
        raise DomainError("valuation undefined at 0")
    n = 0
    while x % p == 0:
        n += 1
        x //= p
    return n


def split_valuation(p: int, m: int, x0: int, x1: int) -> tuple[int, int]:
    """Split an exponent m with p^m | x0*x1 into n0 + n1 with p^ni | xi.

    Canonical choice puts as much as possible on x0: n0 = min(m, valuation(p, x0)).
    """
    check_natural(p, m, x0, x1)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if x0 * x1 == 0:
        raise DomainError("split_valuation requires x0*x1 >= 1")
    if not divides(p**m, x0 * x1):
        raise DomainError(f"{p}^{m} does not divide {x0}*{x1}")
    n0 = min(m, valuation(p, x0))
    return n0, m - n0


def coprime(values: list[int]) -> bool:
    """True iff the only common divisor of all values is 1."""
    if not values:
        raise DomainError("coprime undefined for the empty list")
    check_natural(*values)
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g == 1


def common_prime_witness(values: list[int]) -> int | None:
    """Least prime dividing every value, or None when the list is coprime."""
    if not values:
        raise DomainError("common_prime_witness undefined for the empty list")
    check_natural(*values)
    g = 0
    for v in values:
        g = math.gcd(g, v)
    if g == 1:
        return None
    if g == 0:
        return 2  # every prime divides 0; 2 is the least
    return least_prime_divisor(g)


def euclid_lemma_side(p: int, x1: int, x2: int) -> int:
    """Index in {1, 2} of a factor divisible by p, given prime p | x1*x2.

    Canonical tie-break: 1 whenever p | x1.
    """
    check_natural(p, x1, x2)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not divides(p, x1 * x2):
        raise DomainError(f"{p} does not divide {x1}*{x2}")
    return 1 if divides(p, x1) else 2


def divides_via_valuations(x: int, y: int) -> bool:
    """divides(x, y) computed purely from the prime-power criterion.

    Exists as an independent cross-check: x | y iff every prime power
    dividing x also divides y.
    """
    check_natural(x, y)
    if x == 0 or y == 0:
        raise DomainError("divides_via_valuations requires positive inputs")
    return all(divides(p**e, y) for p, e in factorize(x).factors)
