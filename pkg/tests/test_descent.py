"""Schema checkers, the RD-to-ID transformation, traces, serialization, and
the built-in historical descents."""

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from descente.descent_engine import (
    DescentInstance,
    DescentTrace,
    Failure,
    IndexedDescentFamily,
    ReductionDescentInstance,
    Report,
    TraceEntry,
    check_id,
    check_id_prime,
    check_rd,
    gcd_instance,
    gcd_trace_instance,
    pair_decode,
    pair_encode,
    pentagon_instance,
    pentagon_step,
    quad_decode,
    quad_encode,
    rd_to_id,
    run_descent,
    vii31_instance,
    vii31_rd_instance,
    vii31_trace_instance,
)
from descente.errors import DomainError


# ---------------------------------------------------------------------------
# pairing


@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_pair_round_trip(a, b):
    assert pair_decode(pair_encode(a, b)) == (a, b)


@given(st.integers(0, 10**6))
def test_pair_decode_then_encode(v):
    assert pair_encode(*pair_decode(v)) == v


def test_pair_is_bijective_on_prefix():
    seen = set()
    for a in range(50):
        for b in range(50):
            v = pair_encode(a, b)
            assert v not in seen
            seen.add(v)
    assert pair_encode(0, 0) == 0


@given(st.tuples(*[st.integers(0, 10**4)] * 4))
def test_quad_round_trip(t):
    assert quad_decode(quad_encode(*t)) == t


# ---------------------------------------------------------------------------
# check_id


def test_check_id_vii31_vacuous():
    report = check_id(vii31_instance(), 10**4)
    assert report.ok and report.failures == ()
    assert report.schema == "id" and report.bound == 10**4


def test_check_id_always_true_predicate():
    inst = DescentInstance("trivial", lambda v: True, lambda v: v, lambda v: None)
    assert check_id(inst, 100).ok


def test_check_id_detects_weight_increase():
    inst = DescentInstance(
        "bad-weight",
        predicate=lambda v: v != 5,
        weight=lambda v: v,
        step=lambda v: 7 if v == 5 else None,
    )
    report = check_id(inst, 10)
    assert not report.ok
    assert all(f.value == 5 for f in report.failures)
    assert "weight-not-decreased" in {f.kind for f in report.failures}


def test_check_id_detects_undefined_step_and_bad_target():
    inst = DescentInstance(
        "bad-step",
        predicate=lambda v: v not in (4, 6),
        weight=lambda v: v,
        step=lambda v: {6: 3}.get(v),  # undefined at 4; 3 satisfies P at 6
    )
    report = check_id(inst, 10)
    kinds = {f.value: f.kind for f in report.failures}
    assert kinds == {4: "step-undefined", 6: "step-not-counterexample"}


def test_check_id_captures_step_exceptions_as_data():
    def step(v):
        raise RuntimeError("boom")

    inst = DescentInstance("raises", lambda v: v != 3, lambda v: v, step)
    report = check_id(inst, 5)
    assert [f.kind for f in report.failures] == ["step-error"]


def test_check_id_rejects_bad_bound():
    with pytest.raises(DomainError):
        check_id(vii31_instance(), 0)


# ---------------------------------------------------------------------------
# check_rd


def test_check_rd_gcd_pairs_up_to_200():
    report = check_rd(gcd_instance(), pair_encode(200, 200))
    assert report.ok


def test_check_rd_trivial():
    inst = ReductionDescentInstance(
        "trivial", lambda v: True, lambda v: True, lambda v: v, lambda v: None
    )
    assert check_rd(inst, 50).ok


def test_check_rd_base_without_predicate():
    inst = ReductionDescentInstance(
        "s-not-p",
        base=lambda v: v == 3,
        predicate=lambda v: False,
        weight=lambda v: v,
        step=lambda v: 0 if v else None,
    )
    report = check_rd(inst, 5)
    assert any(f.value == 3 and f.kind == "base-without-predicate" for f in report.failures)


# ---------------------------------------------------------------------------
# rd_to_id


def test_rd_to_id_gcd():
    bound = pair_encode(120, 120)
    assert check_rd(gcd_instance(), bound).ok
    assert check_id(rd_to_id(gcd_instance()), bound).ok


def test_rd_to_id_vii31():
    assert check_rd(vii31_rd_instance(), 10**4).ok
    assert check_id(rd_to_id(vii31_rd_instance()), 10**4).ok


def test_rd_to_id_trivial_all_true():
    inst = ReductionDescentInstance(
        "true", lambda v: True, lambda v: True, lambda v: v, lambda v: None
    )
    out = rd_to_id(inst)
    assert all(out.predicate(v) for v in range(100))


def _random_rd_instance(rng: random.Random, bound: int) -> ReductionDescentInstance:
    """A well-formed RD instance over [0, bound]: S subset of P, and every
    non-P value steps to a strictly smaller non-P value (descending chains
    through the non-P set, escaping above the bound at the chain's end)."""
    style = rng.randrange(3)
    if style == 0:
        # P covers everything; S is a random subset.  Obligations vacuous.
        s = {v for v in range(bound + 1) if rng.random() < 0.3}
        return ReductionDescentInstance(
            f"rand-vacuous-{rng.randrange(10**6)}",
            base=lambda v, s=s: v in s,
            predicate=lambda v: True,
            weight=lambda v: v,
            step=lambda v: None,
        )
    # Non-P values inside the window step to non-P partners above the bound
    # with strictly smaller weight; the checker certifies obligations only at
    # values <= bound, so the partners carry no obligations of their own.
    bad = rng.sample(range(bound + 1), rng.randrange(1, 12))
    partners = {v: bound + 1 + v for v in bad}
    bad_set = set(bad) | set(partners.values())
    s = {v for v in range(bound + 1) if v not in bad_set and rng.random() < 0.2}

    def weight(v: int) -> int:
        # source v has weight 2(v+1); its partner has 2(v+1) - 1
        return 2 * (v + 1) if v <= bound else 2 * (v - bound) - 1

    return ReductionDescentInstance(
        f"rand-chain-{rng.randrange(10**6)}",
        base=lambda v, s=s: v in s,
        predicate=lambda v, b=bad_set: v not in b,
        weight=weight,
        step=lambda v, n=partners: n.get(v),
    )


def test_rd_to_id_preserves_empty_reports_randomized():
    """100 randomized well-formed RD instances: check_rd empty implies
    check_id(rd_to_id(.)) empty over the same bound."""
    rng = random.Random(20260823)
    bound = 500
    for _ in range(100):
        inst = _random_rd_instance(rng, bound)
        rd_report = check_rd(inst, bound)
        assert rd_report.ok, rd_report.failures[:3]
        id_report = check_id(rd_to_id(inst), bound)
        assert id_report.ok, id_report.failures[:3]


def test_id_prime_single_family_agrees_with_id_randomized():
    """ID' with a one-element family gives the same verdict (and the same
    failure values) as ID, on 100 randomized instances including broken ones."""
    rng = random.Random(96)
    bound = 300
    for _ in range(100):
        bad = set(rng.sample(range(bound + 1), rng.randrange(0, 20)))
        nxt = {v: rng.randrange(0, bound + 1) for v in bad}
        pred = lambda v, b=bad: v not in b
        step = lambda v, n=nxt: n.get(v)
        weight = lambda v: v
        inst = DescentInstance("rand", pred, weight, step)
        fam = IndexedDescentFamily("rand", (pred,), weight, (step,))
        id_report = check_id(inst, bound)
        idp_report = check_id_prime(fam, bound)
        assert id_report.ok == idp_report.ok
        assert [(f.value, f.kind) for f in id_report.failures] == [
            (f.value, f.kind) for f in idp_report.failures
        ]


def test_id_prime_detects_step_landing_on_satisfying_value():
    fam = IndexedDescentFamily(
        "two",
        predicates=(lambda v: v != 7, lambda v: True),
        weight=lambda v: v,
        steps=(lambda v: 5 if v == 7 else None, lambda v: None),
    )
    report = check_id_prime(fam, 10)
    assert [f.kind for f in report.failures] == ["step-not-counterexample"]
    assert report.failures[0].index == 0


def test_id_prime_requires_nonempty_family():
    with pytest.raises(DomainError):
        IndexedDescentFamily("empty", (), lambda v: v, ())


# ---------------------------------------------------------------------------
# traces


def test_run_descent_pentagon_8_5():
    trace = run_descent(pentagon_instance(), pair_encode(8, 5), 100)
    values = [pair_decode(e.value) for e in trace.entries]
    assert values == [(8, 5), (3, 2), (1, 1)]
    assert trace.outcome == "step-undefined"
    assert [e.weight for e in trace.entries] == [8, 3, 1]


def test_run_descent_start_satisfies_predicate():
    trace = run_descent(vii31_trace_instance(), 13, 100)
    assert len(trace.entries) == 1
    assert trace.outcome == "predicate-holds"


def test_run_descent_vii31_360():
    trace = run_descent(vii31_trace_instance(), 360, 100)
    assert [e.value for e in trace.entries] == [360, 72, 24, 8, 4, 2]
    assert trace.outcome == "predicate-holds"


def test_run_descent_bound_exceeded():
    inst = DescentInstance(
        "down", lambda v: False, lambda v: v, lambda v: v - 1 if v else None
    )
    trace = run_descent(inst, 50, 3)
    assert trace.outcome == "bound-exceeded"
    assert len(trace.entries) == 4


def test_run_descent_gcd():
    trace = run_descent(gcd_trace_instance(), pair_encode(12, 9), 100)
    assert [pair_decode(e.value) for e in trace.entries] == [(12, 9), (9, 3), (3, 0)]
    assert trace.outcome == "predicate-holds"


def test_trace_weights_must_strictly_decrease():
    with pytest.raises(DomainError):
        DescentTrace(
            "x",
            (TraceEntry(1, 5, "a"), TraceEntry(2, 5, "b")),
            "predicate-holds",
        )
    with pytest.raises(DomainError):
        DescentTrace("x", (), "no-such-outcome")


# ---------------------------------------------------------------------------
# pentagon arithmetic


def test_pentagon_step_examples():
    assert pentagon_step(8, 5) == (3, 2)
    assert pentagon_step(13, 8) == (5, 3)
    assert pentagon_step(3, 2) == (1, 1)
    with pytest.raises(DomainError):
        pentagon_step(1, 1)
    with pytest.raises(DomainError):
        pentagon_step(5, 2)


def test_pentagon_fibonacci_pairs():
    fib = [0, 1]
    while len(fib) < 33:
        fib.append(fib[-1] + fib[-2])
    for k in range(3, 31):
        assert pentagon_step(fib[k + 1], fib[k]) == (fib[k - 1], fib[k - 2])


# ---------------------------------------------------------------------------
# serialization


def test_report_jsonl_round_trip():
    report = Report(
        "id",
        "demo",
        42,
        (Failure(5, "weight-not-decreased", "weight 5 -> 7"), Failure(6, "step-undefined", "x", 1)),
    )
    lines = report.to_jsonl()
    assert all(isinstance(json.loads(line), dict) for line in lines)
    assert Report.from_jsonl(lines) == report
    # fixed key order
    assert list(json.loads(lines[-1]).keys()) == [
        "record", "schema", "instance", "bound", "failures", "ok",
    ]
    assert list(json.loads(lines[0]).keys()) == [
        "record", "schema", "instance", "value", "index", "kind", "detail",
    ]


def test_report_text_rendering():
    report = check_id(vii31_instance(), 10)
    text = report.to_text()
    assert text[-1] == "id check of 'vii31' up to 10: ok"


def test_trace_jsonl_round_trip():
    trace = run_descent(vii31_trace_instance(), 360, 100)
    lines = trace.to_jsonl()
    assert DescentTrace.from_jsonl(lines) == trace
    assert list(json.loads(lines[0]).keys()) == ["record", "instance", "value", "weight", "label"]
    assert list(json.loads(lines[-1]).keys()) == ["record", "instance", "outcome", "entries"]


# ---------------------------------------------------------------------------
# builtin instances stay clean at scale


@pytest.mark.parametrize("bound", [10, 100, 1000, 10**4])
def test_builtin_checks_empty_at_all_bounds(bound):
    assert check_id(vii31_instance(), bound).ok
    assert check_rd(vii31_rd_instance(), bound).ok
    assert check_rd(gcd_instance(), bound).ok
