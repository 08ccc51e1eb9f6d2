"""Congruences, prime chains and Krull dimension for additively idempotent
semirings."""
from .congruences import (
    Congruence,
    EvalPullback,
    FiniteCongruence,
    Improper,
    Pair,
    Trivial,
    all_congruences,
    closure_finite,
    quotient_semiring,
    restrict_to_base,
)
from .errors import IdemdimError
from .harness import (
    base_dimension,
    build_polynomial_chain,
    dim_finite,
    enumerate_congruences_finite,
    verify_chain,
    verify_theorems,
)
from .parser import parse_congruence, parse_expression, parse_ring_spec
from .polynomials import Poly, PolyRing
from .primes import IntersectQC, LeadingTermPrime, is_irreducible_finite, is_prime_finite, is_qc_finite, make_weight_prime
from .scalars import BOOL, INTMAX, RATMAX, FiniteSemiring, LexMonomials, Scalar, bundled_corpus, read_semiring
from .semifields import FracExtension, FractionRing, Principal, semifield_dim

__version__ = "0.1.0"

__all__ = [
    "BOOL",
    "Congruence",
    "EvalPullback",
    "FiniteCongruence",
    "FiniteSemiring",
    "FracExtension",
    "FractionRing",
    "INTMAX",
    "IdemdimError",
    "Improper",
    "IntersectQC",
    "LeadingTermPrime",
    "LexMonomials",
    "Pair",
    "Poly",
    "PolyRing",
    "Principal",
    "RATMAX",
    "Scalar",
    "Trivial",
    "all_congruences",
    "base_dimension",
    "build_polynomial_chain",
    "bundled_corpus",
    "closure_finite",
    "dim_finite",
    "enumerate_congruences_finite",
    "is_irreducible_finite",
    "is_prime_finite",
    "is_qc_finite",
    "make_weight_prime",
    "parse_congruence",
    "parse_expression",
    "parse_ring_spec",
    "quotient_semiring",
    "read_semiring",
    "restrict_to_base",
    "semifield_dim",
    "verify_chain",
    "verify_theorems",
]
