from itertools import product

import pytest

from idemdim.congruences import Improper, Trivial, all_congruences, closure_finite
from idemdim.errors import CarrierCap, NotADomainTop, UnsupportedBase
from idemdim.harness import base_chain
from idemdim.polynomials import PolyRing
from idemdim.primes import (
    IntersectQC,
    is_irreducible_finite,
    is_prime_finite,
    is_qc_finite,
    make_intersect_qc,
    make_lifted_prime,
    make_weight_prime,
    prime_witness,
    qc_witness,
    weight_prime_k1,
)
from idemdim.scalars import BOOL, INTMAX, bundled_corpus, corpus_semiring, finite_domain_report, zmax

from oracles import brute_prime, relation_of_labels, weight_member

BXY_L = PolyRing(BOOL, 2, True)
BXY = PolyRing(BOOL, 2)
x, y = BXY_L.gens()
one = BXY_L.one
CORPUS = bundled_corpus()


def test_weight_prime_examples():
    P = make_weight_prime([[1, 0]], BXY_L)
    assert P.member((x + y, x))
    assert P.member((y, one))
    Q = make_weight_prime([[1, 0], [0, 1]], BXY_L)
    assert not Q.member((y, one))
    Z = make_weight_prime([[0, 0]], BXY_L)
    assert Z.member((x, y))
    assert not Z.member((x, BXY_L.zero))


def test_weight_prime_needs_boolean_base():
    with pytest.raises(UnsupportedBase):
        make_weight_prime([[1, 0]], PolyRing(INTMAX, 2))
    with pytest.raises(ValueError):
        make_weight_prime([[1, 0, 0]], BXY_L)


def _supports():
    monos = [(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    return [frozenset([m]) for m in monos] + [frozenset([m, n]) for m, n in zip(monos, monos[3:])]


@pytest.mark.parametrize("V", [[[1, 0]], [[1, 1]], [[2, -1]], [[1, 0], [0, 1]], [[0, 1], [1, 0]], [["1/2", 1]]])
def test_weight_prime_matches_leading_value_oracle(V):
    P = make_weight_prime(V, BXY_L)
    sups = _supports()
    for f, g in product(sups, repeat=2):
        pf = BXY_L.from_terms({e: BOOL.one for e in f})
        pg = BXY_L.from_terms({e: BOOL.one for e in g})
        assert P.member((pf, pg)) == weight_member(V, f, g)


def test_weight_prime_generator_soundness():
    """Every quoted generator (m + m', m) with v.m >= v.m' is a member, and
    translating by any slice element keeps it a member."""
    slice_monos = [(a, b) for a in range(4) for b in range(4) if a + b <= 3]
    for v in ([1, 0], [1, 1], [2, 1], [1, 3]):
        P = make_weight_prime([v], BXY)
        val = lambda u: v[0] * u[0] + v[1] * u[1]
        mono = lambda u: BXY.monomial(u)
        gens = [
            (mono(n) + mono(m), mono(n))
            for n in slice_monos
            for m in slice_monos
            if val(n) >= val(m)
        ]
        slice_elems = [mono(u) for u in slice_monos] + [mono(u) + mono(w) for u, w in zip(slice_monos, slice_monos[1:])]
        for f, g in gens:
            assert P.member((f, g))
            for c in slice_elems[::3]:
                assert P.member((f * c, g * c))
                assert P.member((f + c, g + c))


def test_lifted_prime_examples():
    ring = PolyRing(INTMAX, 1, True)
    bc = base_chain(INTMAX)
    X, five = ring.var(0), ring.const(zmax(5))
    P0 = make_lifted_prime(bc, 0, False, ring)
    assert P0.member((X + five, X))
    assert not P0.member((X, five))
    top = make_lifted_prime(bc, 1, True, ring)
    assert top.member((X, five))
    with pytest.raises(ValueError):
        make_lifted_prime(bc, 0, True, ring)
    with pytest.raises(ValueError):
        make_lifted_prime(bc, 5, False, ring)


def test_lifted_top_needs_b_quotient():
    F = corpus_semiring("bxb")
    bc = base_chain(F)
    assert bc.top_collapses
    ring = PolyRing(F, 1)
    make_lifted_prime(bc, bc.dim, True, ring)
    bc.top_collapses = False
    with pytest.raises(NotADomainTop):
        make_lifted_prime(bc, bc.dim, True, ring)


def test_intersect_qc_examples():
    C1, C2 = make_intersect_qc(1, BXY_L), make_intersect_qc(2, BXY_L)
    f = x + y**2
    assert C2.member((f, x)) and not C1.member((f, x))
    assert C1.member((f, f))
    for n in range(1, 11):
        assert not make_intersect_qc(n, BXY_L).member((x, y))


def test_intersect_qc_bound_self_check():
    C = IntersectQC(2, BXY_L, check_bound=True)
    for a, b, c, d in product(range(-2, 3), repeat=4):
        f = BXY_L.monomial((a, b)) + BXY_L.monomial((c, d))
        C.member((f, x))
        C.member((f, BXY_L.monomial((b, a))))


def test_p_k1_constructor():
    P = weight_prime_k1(3)
    assert P.member((x + y**3, x)) and not P.member((x + y**4, x))


# -- finite deciders --------------------------------------------------------------


def test_finite_examples():
    T3 = corpus_semiring("t3")
    C = closure_finite(T3, [(T3.element("1"), T3.element("a"))])
    assert is_prime_finite(T3, C)
    assert not is_prime_finite(T3, Trivial(T3))
    assert not is_prime_finite(T3, Improper(T3))
    assert prime_witness(T3, Improper(T3)) == ("improper",)
    B = corpus_semiring("b")
    assert is_qc_finite(B, Trivial(B))
    c, a, b = qc_witness(T3, Trivial(T3))
    assert T3.carrier[c] != "0" and T3.mul[c][a] == T3.mul[c][b]
    F = corpus_semiring("bxb")
    # kernel of the first projection: classes {0, q} and {p, 1}
    proj1 = closure_finite(F, [(F.element("q"), F.zero)])
    assert sorted(map(len, proj1.classes())) == [2, 2]
    assert is_qc_finite(F, proj1)
    assert is_irreducible_finite(B, Trivial(B))
    assert not is_irreducible_finite(F, Trivial(F))
    for G in (B, T3, F):
        assert is_irreducible_finite(G, Improper(G))


def test_decider_cap():
    F = corpus_semiring("trunc4")
    with pytest.raises(CarrierCap):
        is_prime_finite(F, Trivial(F), cap=3)


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_prime_matches_oracle(F):
    for C in all_congruences(F):
        assert is_prime_finite(F, C) == brute_prime(F, relation_of_labels(C.labels))


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_prime_iff_qc_and_irreducible(F):
    lattice = all_congruences(F)
    for C in lattice:
        if C.is_improper:
            continue
        assert is_prime_finite(F, C) == (is_qc_finite(F, C) and is_irreducible_finite(F, C, lattice))


@pytest.mark.parametrize("F", CORPUS, ids=lambda F: F.name)
def test_domain_iff_trivial_is_prime(F):
    assert finite_domain_report(F).is_domain == is_prime_finite(F, Trivial(F))


def test_witness_pairs_are_genuine():
    F = corpus_semiring("bxb")
    (a1, a2), (b1, b2) = prime_witness(F, Trivial(F))
    A, M = F.add, F.mul
    assert a1 != a2 and b1 != b2
    assert A[M[a1][b1]][M[a2][b2]] == A[M[a1][b2]][M[a2][b1]]
