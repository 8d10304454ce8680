"""The square-area theorem: no Pythagorean triangle with positive integer
sides has area 2*x3^2 twice a square... precisely: x0^2 + x1^2 == x2^2 with
x0, x1 >= 1 excludes x0*x1 == 2*x3^2.

The claims of the descent are runnable code even though their shared
precondition (a genuine counterexample) is unsatisfiable: that emptiness is
the theorem, and the exhaustive searches below certify it at desk scale.
Each claim's constructive core is independently satisfiable and tested
through the proportions and diophantine modules.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .core_arith import common_prime_witness, coprime, is_prime
from .descent_engine import (
    DescentInstance,
    IndexedDescentFamily,
    pair_decode,
    pair_encode,
    quad_decode,
    quad_encode,
)
from .diophantine import (
    PythTriple,
    decompose_primitive_triple,
    decompose_primitive_two_square,
)
from .errors import DomainError
from .proportions import split_coprime_square, split_sum_diff_square


@dataclass(frozen=True)
class CandidateSolution:
    """A quadruple to classify; deliberately admits non-solutions."""

    x0: int
    x1: int
    x2: int
    x3: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.x0, self.x1, self.x2, self.x3


@dataclass(frozen=True)
class ClaimIData:
    """First waypoint of the descent: the generators are squares and their
    squares differ by a square."""

    p: int
    q: int
    c: int
    e: int
    f: int

    def __post_init__(self):
        if not coprime([self.p, self.q]):
            raise DomainError("p and q must be coprime")
        if (self.p + self.q) % 2 == 0:
            raise DomainError("exactly one of p, q must be odd")
        if not self.p > self.q:
            raise DomainError("need p > q")
        if self.p != self.e**2 or self.q != self.f**2:
            raise DomainError("p and q must be the squares of e and f")
        if self.p**2 - self.q**2 != self.c**2:
            raise DomainError("p^2 - q^2 must equal c^2")
        if not self.e > self.f > 0:
            raise DomainError("need e > f > 0")


@dataclass(frozen=True)
class ClaimIIData:
    """Two squares whose sum and difference are both squares."""

    e: int
    f: int
    g: int
    h: int

    def __post_init__(self):
        if self.g < 1 or self.h < 1 or not coprime([self.g, self.h]):
            raise DomainError("g and h must be positive and coprime")
        if not self.e > self.f > 0:
            raise DomainError("need e > f > 0")
        if self.e**2 + self.f**2 != self.g**2:
            raise DomainError("e^2 + f^2 must equal g^2")
        if self.e**2 - self.f**2 != self.h**2:
            raise DomainError("e^2 - f^2 must equal h^2")


def is_counterexample(c: CandidateSolution) -> bool:
    """True iff c has positive legs, is a Pythagorean triple, and its leg
    product is twice a square."""
    return (
        c.x0 >= 1
        and c.x1 >= 1
        and c.x0**2 + c.x1**2 == c.x2**2
        and c.x0 * c.x1 == 2 * c.x3**2
    )


def _satisfies_both_equations(c: CandidateSolution) -> bool:
    return c.x0**2 + c.x1**2 == c.x2**2 and c.x0 * c.x1 == 2 * c.x3**2


@lru_cache(maxsize=1)
def degenerate_solutions() -> frozenset[CandidateSolution]:
    """The solutions that appear once zeros are admitted: the all-zero
    quadruple and the two coprime unit triangles.

    Computed by brute force over coprime (or all-zero) quadruples below 3.
    """
    out = set()
    for x0 in range(3):
        for x1 in range(3):
            for x2 in range(3):
                for x3 in range(3):
                    c = CandidateSolution(x0, x1, x2, x3)
                    if not _satisfies_both_equations(c):
                        continue
                    if (x0, x1, x2) == (0, 0, 0) or coprime([x0, x1, x2]):
                        out.add(c)
    return frozenset(out)


def reduce_triple_by_prime(t: PythTriple, z: int) -> PythTriple:
    """Divide a triple through by a prime dividing both legs (it then divides
    the hypotenuse as well, since z^2 | x2^2 forces z | x2)."""
    if not is_prime(z):
        raise DomainError(f"{z} is not prime")
    if t.x0 % z or t.x1 % z:
        raise DomainError(f"{z} does not divide both legs")
    assert t.x2 % z == 0
    return PythTriple(t.x0 // z, t.x1 // z, t.x2 // z)


def reduce_area_witness(x3: int, z: int) -> int:
    """The matching reduction of the area witness in the first descent case."""
    if not is_prime(z):
        raise DomainError(f"{z} is not prime")
    if x3 % z:
        raise DomainError(f"{z} does not divide {x3}")
    return x3 // z


def _counterexample_guard(c: CandidateSolution) -> None:
    if not is_counterexample(c):
        raise DomainError(
            f"({c.x0}, {c.x1}, {c.x2}, {c.x3}) is not a counterexample: "
            "either not a positive-leg triple or the leg product is not twice a square"
        )
    if not coprime([c.x0, c.x1]):
        raise DomainError(
            f"legs {c.x0}, {c.x1} share a factor; reduce by "
            f"{common_prime_witness([c.x0, c.x1])} first"
        )


def claim_i(c: CandidateSolution) -> ClaimIData:
    """From a coprime counterexample, extract generators p = e^2, q = f^2
    with p^2 - q^2 = c^2.  The precondition is unsatisfiable; the pieces are
    individually satisfiable and tested."""
    _counterexample_guard(c)
    gens = decompose_primitive_triple(PythTriple(c.x0, c.x1, c.x2))
    p, q = gens.p, gens.q
    # x0*x1 = 2*x3^2 gives p*q*(p^2 - q^2) = x3^2 with coprime factors.
    b, cc = split_coprime_square(p * q, p**2 - q**2, c.x3)
    e, f = split_coprime_square(p, q, b)
    data = ClaimIData(p=p, q=q, c=cc, e=e, f=f)
    assert c.x2 > e > f > 0
    return data


def claim_ii(d: ClaimIData) -> ClaimIIData:
    """Split p+q and p-q (coprime, both squares times each other = c^2) to
    obtain two squares whose sum and difference are squares."""
    g, h = split_sum_diff_square(d.p, d.q, d.c)
    return ClaimIIData(e=d.e, f=d.f, g=g, h=h)


def descend_claim_ii(d: ClaimIIData) -> tuple[int, int, int, int]:
    """Build the strictly smaller counterexample (y0, y1, y2, y3) from a
    sum-and-difference-of-squares state."""
    # Claim IIa / IIb are one-line consequences of the invariants:
    assert d.h**2 + d.f**2 == d.e**2
    assert d.h**2 + 2 * d.f**2 == d.g**2
    m, k = decompose_primitive_two_square(d.h, d.f, d.g)
    y0, y1, y2, y3 = 2 * m**2, k**2, d.e, m * k
    assert y0 * y1 == 2 * y3**2
    assert y0**2 + y1**2 == y2**2
    return y0, y1, y2, y3


def walsh_claim_iii(c: CandidateSolution) -> ClaimIIData:
    """Walsh's direct construction: e = x2, f = 2*x3, g = x0 + x1,
    h = |x0 - x1|; then e^2 +- f^2 = (x0 +- x1)^2."""
    _counterexample_guard(c)
    return ClaimIIData(
        e=c.x2, f=2 * c.x3, g=c.x0 + c.x1, h=abs(c.x0 - c.x1)
    )


def frenicle_descend(d: ClaimIData) -> tuple[int, int]:
    """Frenicle's shortcut: apply Proposition XXXVIII to the triple
    (q, c, p) with even-leg square witness f, giving (2m^2)^2 + (k^2)^2 = e^2."""
    from .diophantine import frenicle_xxxviii

    if d.c % 2 == 0:
        raise DomainError("c must be odd")
    m, k = frenicle_xxxviii(PythTriple(d.q, d.c, d.p), d.f)
    assert (2 * m**2) ** 2 + (k**2) ** 2 == d.e**2
    return m, k


# ---------------------------------------------------------------------------
# descent-engine wiring


def walsh_start_weight(x2: int, x3: int) -> int:
    """Weight of a candidate quadruple in Walsh's schedule."""
    return x2**2 + (2 * x3) ** 2 + 1


def walsh_state_weight(e: int, f: int) -> int:
    """Weight of a sum-and-difference state in Walsh's schedule."""
    return e**2 + f**2


def encode_candidate(c: CandidateSolution) -> int:
    return quad_encode(*c.as_tuple())


def decode_candidate(v: int) -> CandidateSolution:
    return CandidateSolution(*quad_decode(v))


def encode_walsh_candidate(c: CandidateSolution) -> int:
    return pair_encode(0, encode_candidate(c))


def encode_walsh_state(d: ClaimIIData) -> int:
    return pair_encode(1, quad_encode(d.e, d.f, d.g, d.h))


def _is_claim_ii_tuple(e: int, f: int, g: int, h: int) -> bool:
    return (
        g >= 1
        and h >= 1
        and coprime([g, h])
        and e > f > 0
        and e**2 + f**2 == g**2
        and e**2 - f**2 == h**2
    )


def _reduce_to_coprime(c: CandidateSolution) -> CandidateSolution:
    while not coprime([c.x0, c.x1]):
        z = common_prime_witness([c.x0, c.x1])
        t = reduce_triple_by_prime(PythTriple(c.x0, c.x1, c.x2), z)
        c = CandidateSolution(t.x0, t.x1, t.x2, reduce_area_witness(c.x3, z))
    return c


def fermat_instance(weight_mode: str = "modern") -> DescentInstance:
    """Theorem-level indefinite descent over Cantor-encoded quadruples.

    weight_mode 'modern' descends on x2; 'walsh' uses x2^2 + (2*x3)^2 + 1.
    Both step through the primitivity reduction and Claims I, II.
    """
    if weight_mode not in ("modern", "walsh"):
        raise DomainError(f"unknown weight mode {weight_mode!r}")

    def predicate(v: int) -> bool:
        return not is_counterexample(decode_candidate(v))

    def weight(v: int) -> int:
        c = decode_candidate(v)
        if weight_mode == "modern":
            return c.x2
        return walsh_start_weight(c.x2, c.x3)

    def step(v: int) -> Optional[int]:
        c = decode_candidate(v)
        if not is_counterexample(c):
            return None
        c = _reduce_to_coprime(c)
        y = descend_claim_ii(claim_ii(claim_i(c)))
        return quad_encode(*y)

    def describe(v: int) -> str:
        return "candidate ({}, {}, {}, {})".format(*quad_decode(v))

    return DescentInstance("fermat", predicate, weight, step, describe)


def walsh_family() -> IndexedDescentFamily:
    """Walsh's varying-predicate schedule: the theorem predicate feeds the
    sum-and-difference predicate once via Claim III (weight drop exactly 1),
    then Claims I and II keep descending at the state level.

    Values are tagged pairs: tag 0 encodes candidate quadruples, tag 1
    encodes (e, f, g, h) states.
    """

    def p0(v: int) -> bool:
        tag, payload = pair_decode(v)
        if tag != 0:
            return True
        return not is_counterexample(CandidateSolution(*quad_decode(payload)))

    def p1(v: int) -> bool:
        tag, payload = pair_decode(v)
        if tag != 1:
            return True
        return not _is_claim_ii_tuple(*quad_decode(payload))

    def weight(v: int) -> int:
        tag, payload = pair_decode(v)
        if tag == 0:
            x0, x1, x2, x3 = quad_decode(payload)
            return walsh_start_weight(x2, x3)
        e, f, _, _ = quad_decode(payload)
        return walsh_state_weight(e, f)

    def step0(v: int) -> Optional[int]:
        tag, payload = pair_decode(v)
        if tag != 0:
            return None
        c = CandidateSolution(*quad_decode(payload))
        if not is_counterexample(c):
            return None
        d = walsh_claim_iii(_reduce_to_coprime(c))
        return encode_walsh_state(d)

    def step1(v: int) -> Optional[int]:
        tag, payload = pair_decode(v)
        if tag != 1:
            return None
        e, f, g, h = quad_decode(payload)
        if not _is_claim_ii_tuple(e, f, g, h):
            return None
        y = descend_claim_ii(ClaimIIData(e=e, f=f, g=g, h=h))
        nxt = claim_ii(claim_i(CandidateSolution(*y)))
        return encode_walsh_state(nxt)

    def describe(v: int) -> str:
        tag, payload = pair_decode(v)
        kind = "candidate" if tag == 0 else "state"
        return "{} ({}, {}, {}, {})".format(kind, *quad_decode(payload))

    return IndexedDescentFamily(
        "walsh", (p0, p1), weight, (step0, step1), describe
    )


# ---------------------------------------------------------------------------
# exhaustive desk-scale search


def generator_blocks(bound_x2: int) -> list[tuple[int, int]]:
    """All primitive-triple generator pairs with hypotenuse within bound."""
    blocks = []
    p = 2
    while p * p + 1 <= bound_x2:
        for q in range(1 if p % 2 == 0 else 2, p, 2):
            if p * p + q * q > bound_x2:
                break
            if math.gcd(p, q) == 1:
                blocks.append((p, q))
        p += 1
    return blocks


def scan_generator_block(p: int, q: int, bound_x2: int) -> list[tuple[int, int, int, int]]:
    """Solutions among all multiples of the primitive triple of (p, q)."""
    sols = []
    base = p * p + q * q
    legs0 = 2 * p * q
    legs1 = p * p - q * q
    for d in range(1, bound_x2 // base + 1):
        x0, x1 = sorted((legs0 * d, legs1 * d))
        half = x0 * x1 // 2  # one leg is always even
        x3 = math.isqrt(half)
        if x3 * x3 == half:
            sols.append((x0, x1, base * d, x3))
    return sols


def _load_cache(cache_path: str) -> set[tuple[int, int]]:
    done = set()
    if os.path.exists(cache_path):
        with open(cache_path, encoding="utf-8") as fh:
            for line in fh:
                parts = line.split()
                if len(parts) == 3 and parts[2] == "done":
                    done.add((int(parts[0]), int(parts[1])))
    return done


def exhaustive_search(
    bound_x2: int,
    allow_zero: bool = False,
    workers: int = 1,
    cache_path: str | None = None,
) -> list[CandidateSolution]:
    """All quadruples with 1 <= x0 <= x1, x0^2 + x1^2 = x2^2 <= bound_x2^2 and
    x0*x1 = 2*x3^2, enumerated through generators and multiples.

    With allow_zero, zero-leg quadruples are admitted as well; there the
    classification is restricted to coprime triples (plus the all-zero
    quadruple), which is where the descent's primitivity reduction bottoms
    out.  Expected result either way: nothing beyond the degenerate set.
    """
    if bound_x2 < 1:
        raise DomainError("bound must be >= 1")
    blocks = generator_blocks(bound_x2)
    done = _load_cache(cache_path) if cache_path else set()
    pending = [b for b in blocks if b not in done]

    found: list[tuple[int, int, int, int]] = []
    if workers > 1 and pending:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                (block, pool.submit(scan_generator_block, block[0], block[1], bound_x2))
                for block in pending
            ]
            for block, fut in futures:
                found.extend(fut.result())
                _mark_done(cache_path, block)
    else:
        for block in pending:
            found.extend(scan_generator_block(block[0], block[1], bound_x2))
            _mark_done(cache_path, block)

    results = {CandidateSolution(*sol) for sol in found}
    if allow_zero:
        results.add(CandidateSolution(0, 0, 0, 0))
        for v in range(1, bound_x2 + 1):
            if coprime([0, v, v]):
                results.add(CandidateSolution(0, v, v, 0))
                results.add(CandidateSolution(v, 0, v, 0))
    return sorted(results, key=lambda c: c.as_tuple())


def _mark_done(cache_path: str | None, block: tuple[int, int]) -> None:
    if cache_path:
        with open(cache_path, "a", encoding="utf-8") as fh:
            fh.write(f"{block[0]} {block[1]} done\n")


def naive_exhaustive_search(bound_x2: int, allow_zero: bool = False) -> list[CandidateSolution]:
    """Triple-loop oracle for exhaustive_search; O(bound^2), test scale only."""
    results = set()
    lo = 0 if allow_zero else 1
    for x1 in range(lo, bound_x2 + 1):
        for x0 in range(lo, x1 + 1):
            x2 = math.isqrt(x0 * x0 + x1 * x1)
            if x2 * x2 != x0 * x0 + x1 * x1 or x2 > bound_x2:
                continue
            prod = x0 * x1
            if prod % 2:
                continue
            x3 = math.isqrt(prod // 2)
            if 2 * x3 * x3 != prod:
                continue
            if allow_zero and not (
                (x0, x1, x2) == (0, 0, 0) or coprime([x0, x1, x2])
            ):
                continue
            results.add(CandidateSolution(x0, x1, x2, x3))
            if allow_zero and x0 != x1:
                results.add(CandidateSolution(x1, x0, x2, x3))
    return sorted(results, key=lambda c: c.as_tuple())
