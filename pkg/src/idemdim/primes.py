"""Prime congruence families on polynomial and Laurent semirings, and
exhaustive primality / QC / irreducibility deciders on finite carriers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .congruences import (
    Congruence,
    FiniteCongruence,
    Homomorphism,
    Pair,
    QuotientPullback,
    all_congruences,
    as_finite,
    coefficient_map,
)
from .errors import CarrierCap, NotADomainTop, RingMismatch, UnsupportedBase
from .polynomials import Poly, PolyRing
from .scalars import BOOL, Base, FiniteSemiring, enumeration_cap

Matrix = tuple[tuple[Fraction, ...], ...]


def weight_matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(tuple(Fraction(q) for q in row) for row in rows)
    if not out:
        raise ValueError("a weight matrix needs at least one row")
    if len({len(r) for r in out}) != 1:
        raise ValueError("ragged weight matrix")
    return out


def format_matrix(V: Matrix) -> str:
    return "[" + ";".join("[" + ",".join(str(q) for q in row) + "]" for row in V) + "]"


def leading_value(V: Matrix, f: Poly):
    """Lexicographic maximum of V.u over the support of f; None for f = 0."""
    best = None
    for exps in f.support:
        val = tuple(sum((w * e for w, e in zip(row, exps)), Fraction(0)) for row in V)
        if best is None or val > best:
            best = val
    return best


class LeadingTermPrime(Congruence):
    """Identify each polynomial with its leading part.

    The leading part of f is the set of terms whose exponents maximize V.u
    lexicographically; (f, g) is a member iff both are zero, or the maxima
    agree and the coefficient sums over the leading parts are related by
    ``coeff``.  Over a domain base with ``coeff`` a trivial-kernel prime the
    quotient is a totally ordered cancellative monoid with zero, so the
    congruence is prime.
    """

    family = "LeadingTerm"
    trivial_kernel = True

    def __init__(self, ring: PolyRing, weights, coeff: Congruence, *, prime: bool | None = None):
        V = weight_matrix(weights)
        if len(V[0]) != ring.nvars:
            raise ValueError(f"weight rows need {ring.nvars} columns")
        if coeff.ring != ring.base:
            raise RingMismatch("coefficient congruence must live on the base")
        self.ring = ring
        self.weights = V
        self.coeff = coeff
        self.prime = prime

    def key(self, f: Poly):
        top = leading_value(self.weights, f)
        if top is None:
            return None
        total = None
        for exps, c in f.items():
            val = tuple(sum((w * e for w, e in zip(row, exps)), Fraction(0)) for row in self.weights)
            if val == top:
                total = c if total is None else total + c
        return top, total

    def _member(self, f, g):
        kf, kg = self.key(f), self.key(g)
        if kf is None or kg is None:
            return kf is None and kg is None
        return kf[0] == kg[0] and self.coeff.member(Pair(kf[1], kg[1]))

    def __str__(self):
        return f"lead{format_matrix(self.weights)}/{self.coeff}"


class WeightPrime(LeadingTermPrime):
    """P_V on B[x]/B(x): (f, g) in P_V iff val_V(f) == val_V(g)."""

    family = "WeightPrime"

    def __str__(self):
        return f"weight{format_matrix(self.weights)}"


class LiftedPrime(LeadingTermPrime):
    """Lift of a prime p_i of a domain A to A[x]/A(x), or the top collapse."""

    family = "LiftedPrime"

    def __init__(self, ring, weights, coeff, *, index: int | str, prime=True):
        super().__init__(ring, weights, coeff, prime=prime)
        self.index = index

    def __str__(self):
        return f"lift({self.index})"


def make_weight_prime(V, ring: PolyRing) -> WeightPrime:
    if ring.base != BOOL:
        raise UnsupportedBase(f"weight primes need coefficients in B, not {ring.base.name}")
    from .congruences import Trivial

    return WeightPrime(ring, V, Trivial(BOOL), prime=True)


def weight_prime_k1(k, laurent: bool = True) -> WeightPrime:
    """P_(k,1) on B(x,y) (or B[x,y])."""
    return make_weight_prime([[k, 1]], PolyRing(BOOL, 2, laurent))


@dataclass
class BaseChain:
    """A maximal chain of primes of a base A, presented on the domain A/p0.

    ``primes`` are congruences of ``domain`` with trivial kernels, starting
    from the diagonal and ending at a congruence whose quotient is B.  When A
    is not itself a domain, ``reduction`` is the quotient map A -> A/p0.
    """

    base: Base
    domain: Base
    primes: tuple[Congruence, ...]
    witnesses: tuple[Pair, ...] = ()
    reduction: Homomorphism | None = None
    top_collapses: bool = True
    note: str = ""
    source_primes: tuple[Congruence, ...] = field(default=())
    # carrier index in ``base`` of each element of ``domain`` (None: identity)
    lift: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.primes) - 1


def make_lifted_prime(chain: BaseChain, i: int, top: bool, ring: PolyRing) -> Congruence:
    """The i-th lifted prime on A[x]/A(x) (or the top step when ``top``)."""
    if ring.base != chain.base:
        raise RingMismatch(f"chain is over {chain.base.name}, ring over {ring.base.name}")
    if ring.nvars != 1:
        raise ValueError("lifted primes live in one-variable rings")
    d = chain.dim
    if not 0 <= i <= d:
        raise ValueError(f"prime index {i} out of range 0..{d}")
    if top and i != d:
        raise ValueError("the top step is only defined after the last prime")
    if top and not chain.top_collapses:
        raise NotADomainTop(f"{chain.domain.name}/p_{d} is not B")
    dring = PolyRing(chain.domain, 1, ring.laurent)
    weights = [[0]] if top else [[1]]
    label = "top" if top else i
    inner = LiftedPrime(dring, weights, chain.primes[i], index=label)
    if chain.reduction is None:
        return inner
    phi = coefficient_map(ring, chain.domain, chain.reduction)
    pulled = QuotientPullback(phi, inner)
    pulled.index = label
    return pulled


class IntersectQC(Congruence):
    """C_n, the intersection of P_(k,1) over all integers k >= n, on B(x,y).

    For k beyond the exponent spread the lexicographic leading exponent
    decides val_(k,1), so checking k in [n, n+S] with S = 1 + spreads is
    exact.
    """

    family = "IntersectQC"
    prime = None
    trivial_kernel = True

    def __init__(self, n: int, ring: PolyRing, *, check_bound: bool = False):
        if ring.base != BOOL:
            raise UnsupportedBase("IntersectQC needs coefficients in B")
        if ring.nvars != 2:
            raise ValueError("IntersectQC lives in two-variable rings")
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.ring = ring
        self.check_bound = check_bound

    def k_range(self, f: Poly, g: Poly) -> range:
        supp = f.support | g.support
        xs = [e[0] for e in supp]
        ys = [e[1] for e in supp]
        spread = 1 + (max(xs) - min(xs)) + (max(ys) - min(ys))
        return range(self.n, self.n + spread + 1)

    @staticmethod
    def _value(f: Poly, k: int):
        return max(k * a + b for a, b in f.support)

    def _member(self, f, g):
        if f.is_zero or g.is_zero:
            return f.is_zero and g.is_zero
        ks = self.k_range(f, g)
        result = all(self._value(f, k) == self._value(g, k) for k in ks)
        if self.check_bound:
            far = range(ks.start, ks.start + 2 * len(ks) + 1)
            direct = all(self._value(f, k) == self._value(g, k) for k in far)
            if direct != result:
                raise AssertionError(f"stabilization bound failed for ({f}, {g}) at n={self.n}")
        return result

    def __str__(self):
        return f"iqc({self.n})"


def make_intersect_qc(n: int, ring: PolyRing, **kw) -> IntersectQC:
    return IntersectQC(n, ring, **kw)


# ---------------------------------------------------------------------------
# finite deciders


def _check_cap(F: FiniteSemiring, cap: int | None):
    cap = enumeration_cap() if cap is None else cap
    if F.size > cap:
        raise CarrierCap(f"carrier of size {F.size} exceeds cap {cap}")


def prime_witness(F: FiniteSemiring, C: Congruence, cap: int | None = None):
    """None if C is prime, else a reason: ("improper",) or (alpha, beta)
    as index pairs with alpha*beta in C but neither factor in C."""
    _check_cap(F, cap)
    lab = as_finite(C).labels
    if len(set(lab)) == 1:
        return ("improper",)
    n, A, M = F.size, F.add, F.mul
    outside = [(a, b) for a in range(n) for b in range(n) if lab[a] != lab[b]]
    for a1, a2 in outside:
        Ma1, Ma2 = M[a1], M[a2]
        for b1, b2 in outside:
            if lab[A[Ma1[b1]][Ma2[b2]]] == lab[A[Ma1[b2]][Ma2[b1]]]:
                return ((a1, a2), (b1, b2))
    return None


def is_prime_finite(F: FiniteSemiring, C: Congruence, cap: int | None = None) -> bool:
    return prime_witness(F, C, cap) is None


def qc_witness(F: FiniteSemiring, C: Congruence, cap: int | None = None):
    """None if F/C is cancellative, else (c, a, b) with (ca, cb) in C,
    c not in the kernel and (a, b) not in C."""
    _check_cap(F, cap)
    lab = as_finite(C).labels
    n, M, z = F.size, F.mul, F.zero_index
    for c in range(n):
        if lab[c] == lab[z]:
            continue
        Mc = M[c]
        for a in range(n):
            for b in range(a + 1, n):
                if lab[a] != lab[b] and lab[Mc[a]] == lab[Mc[b]]:
                    return (c, a, b)
    return None


def is_qc_finite(F: FiniteSemiring, C: Congruence, cap: int | None = None) -> bool:
    return qc_witness(F, C, cap) is None


def irreducibility_witness(
    F: FiniteSemiring, C: Congruence, lattice: Sequence[FiniteCongruence] | Any = None, cap: int | None = None
):
    """None if C is irreducible, else (C1, C2) strictly above C with C1 meet C2 = C."""
    _check_cap(F, cap)
    C = as_finite(C)
    if lattice is None:
        lattice = all_congruences(F, cap)
    congs = getattr(lattice, "congruences", lattice)
    above = [D for D in congs if C.issubset(D) and D != C]
    for i, C1 in enumerate(above):
        for C2 in above[i + 1 :]:
            if C1.meet(C2) == C:
                return (C1, C2)
    return None


def is_irreducible_finite(F: FiniteSemiring, C: Congruence, lattice=None, cap: int | None = None) -> bool:
    return irreducibility_witness(F, C, lattice, cap) is None
