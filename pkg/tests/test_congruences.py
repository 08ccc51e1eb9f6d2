from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idemdim.congruences import (
    EvalPullback,
    FiniteCongruence,
    Improper,
    Pair,
    Trivial,
    all_congruences,
    as_finite,
    closure_finite,
    closure_labels,
    closure_violation,
    quotient_semiring,
    restrict_to_base,
    twisted_product,
)
from idemdim.errors import CarrierCap, RingMismatch, UnsupportedQuery
from idemdim.polynomials import PolyRing
from idemdim.primes import make_intersect_qc, make_lifted_prime, make_weight_prime
from idemdim.harness import base_chain
from idemdim.sampling import random_poly, rng_for
from idemdim.scalars import BOOL, INTMAX, bundled_corpus, check_axioms, corpus_semiring, zmax

from oracles import brute_congruences, naive_closure, relation_of_labels

CORPUS = bundled_corpus()
B = corpus_semiring("b")
T3 = corpus_semiring("t3")
BXY_L = PolyRing(BOOL, 2, True)


def test_twisted_product_examples():
    BX = PolyRing(BOOL, 1)
    x, one, zero = BX.var(0), BX.one, BX.zero
    a, b = x + one, x**2
    assert twisted_product(Pair(a, b), Pair(one, zero)) == Pair(a, b)
    assert twisted_product(Pair(x, zero), Pair(a, b)) == Pair(x * a, x * b)
    assert twisted_product((BOOL.one, BOOL.zero), (BOOL.one, BOOL.zero)) == Pair(BOOL.one, BOOL.zero)
    with pytest.raises(RingMismatch):
        twisted_product((BOOL.one, BOOL.zero), (zmax(1), zmax(2)))


def test_closure_examples():
    assert closure_finite(T3, []).is_trivial
    C = closure_finite(T3, [(T3.element("1"), T3.element("a"))])
    assert sorted(map(sorted, C.classes())) == [[0], [1, 2]]
    assert closure_finite(B, [(B.one, B.zero)]).is_improper


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_closure_matches_naive_fixpoint(F):
    n = F.size
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    gen_sets = [[p] for p in pairs] + [list(ps) for ps in combinations(pairs, 2)]
    for gens in gen_sets:
        got = closure_labels(F, gens)
        assert relation_of_labels(got) == naive_closure(F, gens), gens


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_enumeration_matches_partition_brute_force(F):
    got = {frozenset(relation_of_labels(C.labels)) for C in all_congruences(F)}
    assert got == brute_congruences(F)


@pytest.mark.parametrize("F", [F for F in CORPUS if F.size <= 4], ids=lambda F: F.name)
def test_closure_is_minimal(F):
    """Splitting any class of a principal closure breaks the congruence
    property or loses the generator."""
    n = F.size
    for a, b in combinations(range(n), 2):
        C = closure_labels(F, [(a, b)])
        for i in range(n):
            if C[i] == i:
                continue
            # move i into a class of its own
            split = tuple(i if k == i else C[k] for k in range(n))
            assert split[a] != split[b] or closure_violation(F, split) is not None


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_transversal_regenerates(F):
    for C in all_congruences(F):
        gens = [(Pair(F.elements()[lab], F.elements()[i])) for i, lab in enumerate(C.labels) if i != lab]
        assert closure_finite(F, gens) == C


def test_member_trivial_polynomial():
    BX = PolyRing(BOOL, 1)
    x, one = BX.var(0), BX.one
    T = Trivial(BX)
    assert T.member((x + one, x + one))
    assert not T.member((x + one, x))
    assert Improper(BX).member((x, one))


def test_member_weight_tie():
    P = make_weight_prime([[1, 1]], BXY_L)
    x, y = BXY_L.gens()
    assert P.member((x + y, x))


def test_kernel_examples():
    BX = PolyRing(BOOL, 1)
    x, one = BX.var(0), BX.one
    T = Trivial(BX)
    assert T.kernel_member(BX.zero) and not T.kernel_member(x)
    E = EvalPullback(BX, {"x": BOOL.zero}, Trivial(BX))
    assert E.kernel_member(x) and not E.kernel_member(one)


def test_laurent_semifield_families_have_trivial_kernels():
    ring = PolyRing(INTMAX, 2, True)
    chain = base_chain(INTMAX)
    R1 = PolyRing(INTMAX, 1, True)
    congs = [make_lifted_prime(chain, i, False, R1) for i in range(2)] + [make_lifted_prime(chain, 1, True, R1)]
    congs += [make_weight_prime([[1, 0]], BXY_L), make_intersect_qc(3, BXY_L)]
    for C in congs:
        R = C.ring
        for exps in product(range(-2, 3), repeat=R.nvars):
            for c in ([zmax(-1), zmax(0), zmax(4)] if R.base == INTMAX else [BOOL.one]):
                assert not C.kernel_member(R.monomial(exps, c))
    assert ring.nvars == 2


def test_laurent_evalpull_rejects_non_units():
    with pytest.raises(UnsupportedQuery):
        EvalPullback(BXY_L, {"x": BOOL.zero}, Trivial(BXY_L))


def test_restrict_to_base():
    assert restrict_to_base(Trivial(BXY_L)) == Trivial(BOOL)
    R = restrict_to_base(make_weight_prime([[1, 0]], BXY_L))
    for a, b in product(BOOL.elements(), repeat=2):
        assert R.member((a, b)) == (a == b)
    # evaluation at units fixes constants, so the restriction is the inner congruence
    Z = PolyRing(INTMAX, 1, True)
    q = base_chain(INTMAX).primes[1]
    E = restrict_to_base(EvalPullback(Z, {"x": zmax(0)}, q))
    probes = [INTMAX.zero] + [zmax(v) for v in range(-3, 4)]
    for a, b in product(probes, repeat=2):
        assert E.member((a, b)) == q.member((a, b))


def test_quotient_semiring():
    C = closure_finite(T3, [(T3.element("1"), T3.element("a"))])
    Q, phi = quotient_semiring(T3, C)
    assert Q.size == 2 and check_axioms(Q).passed
    assert phi(T3.element("a")) == phi(T3.element("1"))


def test_enumeration_cap():
    F = corpus_semiring("trunc4")
    with pytest.raises(CarrierCap):
        all_congruences(F, cap=3)


def test_finite_congruence_rejects_non_congruence():
    with pytest.raises(ValueError):
        FiniteCongruence(T3, [0, 0, 2])


# -- congruences absorb twisted products ------------------------------------------


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_twisted_product_stays_in_congruence(F):
    E = F.elements()
    for C in all_congruences(F):
        inside = [Pair(a, b) for a, b in product(E, repeat=2) if C.member((a, b))]
        for p in inside:
            for beta in product(E, repeat=2):
                assert C.member(twisted_product(p, beta))


# -- convexity in the natural order ------------------------------------------------


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_convexity_finite(F):
    E = F.elements()
    for C in all_congruences(F):
        for a, b, c in product(E, repeat=3):
            if a + c == c and c + b == b and C.member((a, b)):
                assert C.member((a, c)) and C.member((b, c))


def _poly_families():
    Z = PolyRing(INTMAX, 1, True)
    chain = base_chain(INTMAX)
    out = [make_lifted_prime(chain, i, False, Z) for i in range(2)] + [make_lifted_prime(chain, 1, True, Z)]
    out += [make_weight_prime(V, BXY_L) for V in ([[1, 0]], [[1, 1]], [[1, 0], [0, 1]], [[0, 0]])]
    out += [make_intersect_qc(n, BXY_L) for n in (1, 3)]
    return out


@given(st.integers(0, 2**32), st.sampled_from(_poly_families()))
def test_convexity_polynomial_families(seed, C):
    rng = rng_for(seed)
    ring = C.ring
    a = random_poly(rng, ring)
    c = a + random_poly(rng, ring, max_terms=2)
    b = c + random_poly(rng, ring, max_terms=2)
    if C.member((a, b)):
        assert C.member((a, c)) and C.member((b, c))
    # kernels are downward closed
    if C.kernel_member(b):
        assert C.kernel_member(a)


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_as_finite_roundtrip(F):
    for C in all_congruences(F):
        assert as_finite(C) == C
