"""Exact natural-number arithmetic, Pythagorean-triple parametrizations, and
a bounded verifier for descent schemas, built around one theorem: no
Pythagorean triangle with positive integer sides has its leg product equal to
twice a square (equivalently, square area)."""

from .core_arith import (
    Factorization,
    coprime,
    divides,
    factorize,
    gcd,
    is_prime,
    least_prime_divisor,
    valuation,
)
from .descent_engine import (
    DescentInstance,
    DescentTrace,
    Failure,
    IndexedDescentFamily,
    ReductionDescentInstance,
    Report,
    check_id,
    check_id_prime,
    check_rd,
    pair_decode,
    pair_encode,
    rd_to_id,
    run_descent,
)
from .diophantine import Generators, PythTriple, decompose_primitive_triple, generate_triple
from .errors import DomainError, NonPrimitiveError
from .fermat import (
    CandidateSolution,
    degenerate_solutions,
    exhaustive_search,
    fermat_instance,
    is_counterexample,
    walsh_family,
)

__all__ = [
    "CandidateSolution",
    "DescentInstance",
    "DescentTrace",
    "DomainError",
    "Factorization",
    "Failure",
    "Generators",
    "IndexedDescentFamily",
    "NonPrimitiveError",
    "PythTriple",
    "ReductionDescentInstance",
    "Report",
    "check_id",
    "check_id_prime",
    "check_rd",
    "coprime",
    "decompose_primitive_triple",
    "degenerate_solutions",
    "divides",
    "exhaustive_search",
    "factorize",
    "fermat_instance",
    "gcd",
    "generate_triple",
    "is_counterexample",
    "is_prime",
    "least_prime_divisor",
    "pair_decode",
    "pair_encode",
    "rd_to_id",
    "run_descent",
    "valuation",
    "walsh_family",
]

__version__ = "0.1.0"
