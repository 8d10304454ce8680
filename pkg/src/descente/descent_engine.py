"""Bounded verifier for the descent schemas and a trace executor.

An instance packages a decidable predicate over naturals, a natural-valued
weight (which makes well-foundedness free), and a partial step function
producing a smaller counterexample.  The checkers certify the schema
obligations for every value up to a bound and report violations as data,
never as exceptions, so the CLI can render them.

Tuple-valued descents are packed through the invertible Cantor pairing
owned by this module (pair_encode / pair_decode).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core_arith import is_prime, proper_divisor_step
from .errors import DomainError

Predicate = Callable[[int], bool]
Weight = Callable[[int], int]
Step = Callable[[int], Optional[int]]


# ---------------------------------------------------------------------------
# pairing


def pair_encode(a: int, b: int) -> int:
    """Cantor pairing: a bijection between pairs of naturals and naturals."""
    return (a + b) * (a + b + 1) // 2 + b


def pair_decode(v: int) -> tuple[int, int]:
    s = (math.isqrt(8 * v + 1) - 1) // 2
    b = v - s * (s + 1) // 2
    return s - b, b


def quad_encode(x0: int, x1: int, x2: int, x3: int) -> int:
    return pair_encode(pair_encode(x0, x1), pair_encode(x2, x3))


def quad_decode(v: int) -> tuple[int, int, int, int]:
    left, right = pair_decode(v)
    x0, x1 = pair_decode(left)
    x2, x3 = pair_decode(right)
    return x0, x1, x2, x3


# ---------------------------------------------------------------------------
# instance types


@dataclass(frozen=True)
class DescentInstance:
    """Indefinite descent: every counterexample steps to a smaller one.

    predicate, weight, and step must be pure functions.
    """

    name: str
    predicate: Predicate
    weight: Weight
    step: Step
    describe: Callable[[int], str] = str


@dataclass(frozen=True)
class ReductionDescentInstance:
    """Reduction-descent: a base class satisfies the predicate directly;
    everything else must step down to a smaller counterexample."""

    name: str
    base: Predicate
    predicate: Predicate
    weight: Weight
    step: Step
    describe: Callable[[int], str] = str


@dataclass(frozen=True)
class IndexedDescentFamily:
    """Varying-predicate descent: a counterexample of P_i steps to a smaller
    counterexample of P_{i+1}.

    Indexing beyond the list saturates at the final predicate.
    """

    name: str
    predicates: tuple[Predicate, ...]
    weight: Weight
    steps: tuple[Step, ...]
    describe: Callable[[int], str] = str

    def __post_init__(self):
        if not self.predicates:
            raise DomainError("predicate family must be nonempty")
        if len(self.steps) != len(self.predicates):
            raise DomainError("one step per predicate required")


# ---------------------------------------------------------------------------
# reports and traces


@dataclass(frozen=True)
class Failure:
    value: int
    kind: str
    detail: str
    index: Optional[int] = None


@dataclass(frozen=True)
class Report:
    schema: str
    instance: str
    bound: int
    failures: tuple[Failure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_jsonl(self) -> list[str]:
        lines = [
            json.dumps(
                {
                    "record": "failure",
                    "schema": self.schema,
                    "instance": self.instance,
                    "value": f.value,
                    "index": f.index,
                    "kind": f.kind,
                    "detail": f.detail,
                }
            )
            for f in self.failures
        ]
        lines.append(
            json.dumps(
                {
                    "record": "report",
                    "schema": self.schema,
                    "instance": self.instance,
                    "bound": self.bound,
                    "failures": len(self.failures),
                    "ok": self.ok,
                }
            )
        )
        return lines

    @classmethod
    def from_jsonl(cls, lines: list[str]) -> "Report":
        failures = []
        summary = None
        for line in lines:
            rec = json.loads(line)
            if rec["record"] == "failure":
                failures.append(
                    Failure(
                        value=rec["value"],
                        kind=rec["kind"],
                        detail=rec["detail"],
                        index=rec["index"],
                    )
                )
            elif rec["record"] == "report":
                summary = rec
        if summary is None:
            raise ValueError("missing report summary line")
        return cls(
            schema=summary["schema"],
            instance=summary["instance"],
            bound=summary["bound"],
            failures=tuple(failures),
        )

    def to_text(self) -> list[str]:
        lines = [
            f"{f.value:>12}  {'' if f.index is None else f'P_{f.index}':<4}  "
            f"{f.kind:<24}  {f.detail}"
            for f in self.failures
        ]
        verdict = "ok" if self.ok else f"{len(self.failures)} failure(s)"
        lines.append(
            f"{self.schema} check of '{self.instance}' up to {self.bound}: {verdict}"
        )
        return lines


@dataclass(frozen=True)
class TraceEntry:
    value: int
    weight: int
    label: str


@dataclass(frozen=True)
class DescentTrace:
    instance: str
    entries: tuple[TraceEntry, ...]
    outcome: str  # predicate-holds | step-undefined | bound-exceeded

    def __post_init__(self):
        if self.outcome not in ("predicate-holds", "step-undefined", "bound-exceeded"):
            raise DomainError(f"unknown outcome {self.outcome!r}")
        weights = [e.weight for e in self.entries]
        if any(b >= a for a, b in zip(weights, weights[1:])):
            raise DomainError("trace weights must strictly decrease")

    def to_jsonl(self) -> list[str]:
        lines = [
            json.dumps(
                {
                    "record": "trace-entry",
                    "instance": self.instance,
                    "value": e.value,
                    "weight": e.weight,
                    "label": e.label,
                }
            )
            for e in self.entries
        ]
        lines.append(
            json.dumps(
                {
                    "record": "trace",
                    "instance": self.instance,
                    "outcome": self.outcome,
                    "entries": len(self.entries),
                }
            )
        )
        return lines

    @classmethod
    def from_jsonl(cls, lines: list[str]) -> "DescentTrace":
        entries = []
        summary = None
        for line in lines:
            rec = json.loads(line)
            if rec["record"] == "trace-entry":
                entries.append(
                    TraceEntry(value=rec["value"], weight=rec["weight"], label=rec["label"])
                )
            elif rec["record"] == "trace":
                summary = rec
        if summary is None:
            raise ValueError("missing trace summary line")
        return cls(
            instance=summary["instance"], entries=tuple(entries), outcome=summary["outcome"]
        )

    def to_text(self) -> list[str]:
        width = max((len(str(e.weight)) for e in self.entries), default=1)
        lines = [
            f"  weight {e.weight:>{width}}  {e.label}"
            for e in self.entries
        ]
        lines.append(f"outcome: {self.outcome}")
        return lines


# ---------------------------------------------------------------------------
# checkers


def _step_obligations(
    step: Step,
    weight: Weight,
    target_pred: Predicate,
    v: int,
    failures: list[Failure],
    index: Optional[int] = None,
) -> None:
    try:
        u = step(v)
    except Exception as exc:  # malformed instances become data, not exceptions
        failures.append(Failure(v, "step-error", f"step raised {exc!r}", index))
        return
    if u is None:
        failures.append(Failure(v, "step-undefined", "no smaller counterexample produced", index))
        return
    if weight(u) >= weight(v):
        failures.append(
            Failure(v, "weight-not-decreased", f"weight {weight(v)} -> {weight(u)}", index)
        )
    if target_pred(u):
        failures.append(
            Failure(v, "step-not-counterexample", f"step output {u} satisfies the predicate", index)
        )


def check_id(inst: DescentInstance, bound: int) -> Report:
    """Certify the indefinite-descent obligations for all values <= bound."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    failures: list[Failure] = []
    for v in range(bound + 1):
        if not inst.predicate(v):
            _step_obligations(inst.step, inst.weight, inst.predicate, v, failures)
    return Report("id", inst.name, bound, tuple(failures))


def check_rd(inst: ReductionDescentInstance, bound: int) -> Report:
    """Certify both reduction-descent obligations for all values <= bound."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    failures: list[Failure] = []
    for v in range(bound + 1):
        if inst.base(v):
            if not inst.predicate(v):
                failures.append(
                    Failure(v, "base-without-predicate", "base holds but predicate fails")
                )
        elif not inst.predicate(v):
            _step_obligations(inst.step, inst.weight, inst.predicate, v, failures)
    return Report("rd", inst.name, bound, tuple(failures))


def check_id_prime(fam: IndexedDescentFamily, bound: int) -> Report:
    """Certify the per-index obligations of the varying-predicate schema."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    failures: list[Failure] = []
    last = len(fam.predicates) - 1
    for i, pred in enumerate(fam.predicates):
        nxt = fam.predicates[min(i + 1, last)]
        step = fam.steps[i]
        for v in range(bound + 1):
            if not pred(v):
                _step_obligations(step, fam.weight, nxt, v, failures, index=i)
    return Report("idprime", fam.name, bound, tuple(failures))


def rd_to_id(inst: ReductionDescentInstance) -> DescentInstance:
    """The classical transformation: check the disjunction base-or-predicate
    as a single indefinite descent, with the step restricted accordingly."""

    def predicate(z: int) -> bool:
        return inst.base(z) or inst.predicate(z)

    def step(z: int) -> Optional[int]:
        if inst.base(z) or inst.predicate(z):
            return None
        return inst.step(z)

    return DescentInstance(
        name=f"{inst.name}-as-id",
        predicate=predicate,
        weight=inst.weight,
        step=step,
        describe=inst.describe,
    )


def run_descent(inst: DescentInstance, start: int, max_steps: int) -> DescentTrace:
    """Iterate the step from start while the predicate fails, recording weights."""
    entries = [TraceEntry(start, inst.weight(start), inst.describe(start))]
    v = start
    outcome = "predicate-holds" if inst.predicate(v) else None
    steps = 0
    while outcome is None:
        if steps >= max_steps:
            outcome = "bound-exceeded"
            break
        u = inst.step(v)
        if u is None:
            outcome = "step-undefined"
            break
        entries.append(TraceEntry(u, inst.weight(u), inst.describe(u)))
        v = u
        steps += 1
        if inst.predicate(v):
            outcome = "predicate-holds"
    return DescentTrace(inst.name, tuple(entries), outcome)


# ---------------------------------------------------------------------------
# builtin historical descents


def pentagon_step(m: int, n: int) -> tuple[int, int]:
    """One pentagram shrink: the proportion m:n becomes (m-n):(2n-m).

    Only valid inside the geometric window n < m < 2n; leaving the window is
    exactly the contradiction the descent manufactures (the golden ratio is
    irrational, so every integer start exits in finitely many steps).
    """
    if not n < m < 2 * n:
        raise DomainError(f"proportion {m}:{n} outside the window n < m < 2n")
    return m - n, 2 * n - m


def pentagon_instance() -> DescentInstance:
    """Golden-ratio descent over Cantor-encoded (m, n) proportions.

    Counterexamples are the claims "the golden proportion is m:n" with
    1 <= n <= m; the step is defined only inside the geometric window, so a
    trace ends step-undefined once the side is no longer less than the
    diagonal.
    """

    def predicate(v: int) -> bool:
        m, n = pair_decode(v)
        return not 1 <= n <= m

    def step(v: int) -> Optional[int]:
        m, n = pair_decode(v)
        if not n < m < 2 * n:
            return None
        return pair_encode(*pentagon_step(m, n))

    def weight(v: int) -> int:
        return pair_decode(v)[0]

    def describe(v: int) -> str:
        m, n = pair_decode(v)
        return f"proportion {m}:{n}"

    return DescentInstance("pentagon", predicate, weight, step, describe)


def vii31_instance() -> DescentInstance:
    """Every number other than 1 has a prime divisor, as an indefinite descent.

    The predicate holds everywhere, so the obligations are vacuous below any
    bound; the divisor-walk step is still wired in for completeness.
    """

    def predicate(x: int) -> bool:
        if x <= 1:
            return True
        d = 2
        while d * d <= x:
            if x % d == 0 and is_prime(d):
                return True
            d += 1
        return True  # x itself is prime

    return DescentInstance(
        "vii31",
        predicate,
        weight=lambda x: x,
        step=proper_divisor_step,
        describe=lambda x: f"{x}" + (" (prime)" if is_prime(x) else ""),
    )


def vii31_trace_instance() -> DescentInstance:
    """The narrative form of the VII.31 walk: descend through proper divisors
    until a prime remains."""

    return DescentInstance(
        "vii31",
        predicate=lambda x: x <= 1 or is_prime(x),
        weight=lambda x: x,
        step=proper_divisor_step,
        describe=lambda x: f"{x}" + (" (prime)" if is_prime(x) else ""),
    )


def vii31_rd_instance() -> ReductionDescentInstance:
    """VII.31 in reduction-descent form: primes (and 0, 1) are the base class."""

    inst = vii31_instance()
    return ReductionDescentInstance(
        "vii31-rd",
        base=lambda x: x <= 1 or is_prime(x),
        predicate=inst.predicate,
        weight=inst.weight,
        step=inst.step,
        describe=inst.describe,
    )


def _euclid_terminates(v: int) -> bool:
    a, b = pair_decode(v)
    while b:
        a, b = b, a % b
    return True


def gcd_instance() -> ReductionDescentInstance:
    """Termination of the remainder descent over Cantor-encoded (a, b) pairs.

    Base class: the second component is 0 (the gcd has been reached).  The
    weight is the second component, which one remainder step strictly
    decreases.
    """

    def step(v: int) -> Optional[int]:
        a, b = pair_decode(v)
        if b == 0:
            return None
        return pair_encode(b, a % b)

    return ReductionDescentInstance(
        "gcd",
        base=lambda v: pair_decode(v)[1] == 0,
        predicate=_euclid_terminates,
        weight=lambda v: pair_decode(v)[1],
        step=step,
        describe=lambda v: "pair ({}, {})".format(*pair_decode(v)),
    )


def gcd_trace_instance() -> DescentInstance:
    """The narrative form of the remainder descent: walk until the second
    component is 0."""

    rd = gcd_instance()
    return DescentInstance(
        "gcd",
        predicate=rd.base,
        weight=rd.weight,
        step=rd.step,
        describe=rd.describe,
    )
