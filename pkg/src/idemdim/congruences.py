"""Pairs, twisted products and congruences.

A congruence is anything with a total, decidable ``member`` predicate on the
pairs of its ring.  Finite carriers get explicit partitions built by a
union-find closure; infinite rings get intensional families (see
``primes`` and ``semifields`` for the dimension-specific ones).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from .errors import (
    CarrierCap,
    RingMismatch,
    UnsupportedQuery,
)
from .polynomials import Poly, PolyRing, evaluate_hom
from .scalars import VALIDATION_CAP, Base, FiniteSemiring, Scalar, enumeration_cap


@dataclass(frozen=True)
class Pair:
    """An ordered pair of elements of one semiring."""

    lhs: Any
    rhs: Any

    def __iter__(self):
        return iter((self.lhs, self.rhs))

    def swapped(self) -> Pair:
        return Pair(self.rhs, self.lhs)

    def is_diagonal(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self):
        return f"({self.lhs}, {self.rhs})"


def as_pair(p) -> Pair:
    return p if isinstance(p, Pair) else Pair(*p)


def twisted_product(alpha, beta) -> Pair:
    """(a1 b1 + a2 b2, a1 b2 + a2 b1)."""
    a1, a2 = as_pair(alpha)
    b1, b2 = as_pair(beta)
    try:
        return Pair(a1 * b1 + a2 * b2, a1 * b2 + a2 * b1)
    except RingMismatch:
        raise
    except Exception as exc:  # TagMismatch from scalars
        raise RingMismatch(str(exc)) from exc


def ring_contains(ring, e) -> bool:
    return ring.contains(e)


class Congruence:
    """Common interface.  Subclasses implement ``_member``."""

    family = "Congruence"
    ring: Any
    # declared by the family contract; None means "not claimed either way"
    prime: bool | None = None
    trivial_kernel: bool | None = None

    def member(self, pair) -> bool:
        a, b = as_pair(pair)
        for e in (a, b):
            if not self.ring.contains(e):
                raise RingMismatch(f"{e!r} is not an element of {self.ring.name}")
        if a == b:
            return True
        return self._member(a, b)

    def _member(self, a, b) -> bool:
        raise NotImplementedError

    def kernel_member(self, e) -> bool:
        return self.member(Pair(e, self.ring.zero))

    def __contains__(self, pair) -> bool:
        return self.member(pair)

    def __str__(self):
        return self.family.lower()

    def __repr__(self):
        return f"<{self.family} on {self.ring.name}: {self}>"


class Trivial(Congruence):
    family = "Trivial"
    trivial_kernel = True

    def __init__(self, ring):
        self.ring = ring

    def _member(self, a, b):
        return False

    def __eq__(self, other):
        if not isinstance(other, Trivial):
            return NotImplemented
        return other.ring == self.ring

    def __hash__(self):
        return hash(("Trivial", self.ring))


class Improper(Congruence):
    family = "Improper"
    prime = False
    trivial_kernel = False

    def __init__(self, ring):
        self.ring = ring

    def _member(self, a, b):
        return True

    def __eq__(self, other):
        if not isinstance(other, Improper):
            return NotImplemented
        return other.ring == self.ring

    def __hash__(self):
        return hash(("Improper", self.ring))


# ---------------------------------------------------------------------------
# finite carriers


class FiniteCongruence(Congruence):
    """An explicit partition of a finite carrier.

    ``labels[i]`` is the smallest carrier index in the class of ``i``.
    """

    def __init__(self, F: FiniteSemiring, labels: Iterable[int], *, check: bool = True):
        labels = tuple(labels)
        if len(labels) != F.size:
            raise ValueError("partition length differs from carrier size")
        self.ring = F
        self.labels = _canonical(labels)
        if check:
            bad = closure_violation(F, self.labels)
            if bad is not None:
                raise ValueError(f"partition is not a congruence: {bad}")

    @property
    def family(self) -> str:
        if self.is_trivial:
            return "Trivial"
        if self.is_improper:
            return "Improper"
        return "FiniteExplicit"

    @property
    def is_trivial(self) -> bool:
        return len(set(self.labels)) == len(self.labels)

    @property
    def is_improper(self) -> bool:
        return len(set(self.labels)) == 1

    @property
    def trivial_kernel(self) -> bool:
        z = self.ring.zero_index
        return all(lab != self.labels[z] or i == z for i, lab in enumerate(self.labels))

    @property
    def nclasses(self) -> int:
        return len(set(self.labels))

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(i)
        return list(out.values())

    def same(self, i: int, j: int) -> bool:
        return self.labels[i] == self.labels[j]

    def _member(self, a, b):
        return self.labels[a.value] == self.labels[b.value]

    def issubset(self, other: FiniteCongruence) -> bool:
        return all(other.labels[i] == other.labels[lab] for i, lab in enumerate(self.labels))

    def meet(self, other: FiniteCongruence) -> FiniteCongruence:
        keys = {}
        labels = [keys.setdefault((a, b), i) for i, (a, b) in enumerate(zip(self.labels, other.labels))]
        return FiniteCongruence(self.ring, labels, check=False)

    def join(self, other: FiniteCongruence) -> FiniteCongruence:
        gens = [(i, lab) for i, lab in enumerate(self.labels) if i != lab]
        gens += [(i, lab) for i, lab in enumerate(other.labels) if i != lab]
        return FiniteCongruence(self.ring, closure_labels(self.ring, gens), check=False)

    def generator_pairs(self) -> list[tuple[int, int]]:
        return [(lab, i) for i, lab in enumerate(self.labels) if i != lab]

    def __eq__(self, other):
        if isinstance(other, (Trivial, Improper)) and other.ring == self.ring:
            return self.is_trivial if isinstance(other, Trivial) else self.is_improper
        return (
            isinstance(other, FiniteCongruence)
            and other.ring == self.ring
            and other.labels == self.labels
        )

    def __hash__(self):
        return hash(("FiniteCongruence", self.labels))

    def __str__(self):
        lab = self.ring.carrier
        return "{" + " | ".join(",".join(lab[i] for i in cls) for cls in self.classes()) + "}"


def _canonical(labels: tuple[int, ...]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    return tuple(first.setdefault(lab, i) for i, lab in enumerate(labels))


def closure_violation(F: FiniteSemiring, labels) -> tuple[str, ...] | None:
    """A witness that the partition is not translation-stable, or None."""
    A, M, n, lab = F.add, F.mul, F.size, F.carrier
    for i in range(n):
        j = labels[i]
        if j == i:
            continue
        for c in range(n):
            if labels[A[i][c]] != labels[A[j][c]]:
                return (lab[i], lab[j], "+", lab[c])
            if labels[M[i][c]] != labels[M[j][c]]:
                return (lab[i], lab[j], "*", lab[c])
    return None


def closure_labels(F: FiniteSemiring, generators: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Least congruence containing the index pairs, as canonical labels.

    Union-find with a worklist of merged pairs: each merge (a, b) is
    re-propagated through a -> a+c and a -> a*c for every carrier c.
    """
    n, A, M = F.size, F.add, F.mul
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    work: deque[tuple[int, int]] = deque()

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb
        work.append((a, b))

    for a, b in generators:
        union(a, b)
    while work:
        a, b = work.popleft()
        Aa, Ab, Ma, Mb = A[a], A[b], M[a], M[b]
        for c in range(n):
            union(Aa[c], Ab[c])
            union(Ma[c], Mb[c])
    return tuple(find(i) for i in range(n))


def closure_finite(F: FiniteSemiring, generators: Iterable, cap: int = VALIDATION_CAP) -> FiniteCongruence:
    """The smallest congruence of F containing every generator pair."""
    if F.size > cap:
        raise CarrierCap(f"carrier of size {F.size} exceeds cap {cap}")
    idx = []
    for p in generators:
        a, b = as_pair(p)
        for e in (a, b):
            if not F.contains(e):
                raise RingMismatch(f"{e!r} is not an element of {F.name}")
        idx.append((a.value, b.value))
    return FiniteCongruence(F, closure_labels(F, idx), check=False)


def diagonal(F: FiniteSemiring) -> FiniteCongruence:
    return FiniteCongruence(F, range(F.size), check=False)


def full_relation(F: FiniteSemiring) -> FiniteCongruence:
    return FiniteCongruence(F, [0] * F.size, check=False)


def as_finite(C: Congruence) -> FiniteCongruence:
    """Explicit partition for a congruence on a finite carrier."""
    F = C.ring
    if not isinstance(F, FiniteSemiring):
        raise UnsupportedQuery(f"{C.family} on {F.name} is not on a finite carrier")
    if isinstance(C, FiniteCongruence):
        return C
    if isinstance(C, Trivial):
        return diagonal(F)
    if isinstance(C, Improper):
        return full_relation(F)
    elems = F.elements()
    labels = []
    for i, a in enumerate(elems):
        labels.append(next(j for j in range(i + 1) if C.member(Pair(a, elems[j]))))
    return FiniteCongruence(F, labels)


def quotient_semiring(F: FiniteSemiring, C: Congruence) -> tuple[FiniteSemiring, Homomorphism]:
    """F/C as a table, with the quotient map.  Each class is labelled by its
    first member."""
    part = as_finite(C)
    reps = sorted(set(part.labels))
    pos = {r: k for k, r in enumerate(reps)}
    add = tuple(tuple(pos[part.labels[F.add[a][b]]] for b in reps) for a in reps)
    mul = tuple(tuple(pos[part.labels[F.mul[a][b]]] for b in reps) for a in reps)
    Q = FiniteSemiring(
        name=f"{F.name}/{part}",
        carrier=tuple(F.carrier[r] for r in reps),
        add=add,
        mul=mul,
        zero_index=pos[part.labels[F.zero_index]],
        one_index=pos[part.labels[F.one_index]],
    )
    return Q, Homomorphism(F, Q, lambda a: Scalar(Q, pos[part.labels[a.value]]), f"{F.name}->{Q.name}")


def all_congruences(F: FiniteSemiring, cap: int | None = None) -> list[FiniteCongruence]:
    """Every congruence of F: joins of principal congruences, to fixpoint.

    Sorted finest first (by number of classes, then labels).
    """
    cap = enumeration_cap() if cap is None else cap
    if F.size > cap:
        raise CarrierCap(f"carrier of size {F.size} exceeds enumeration cap {cap}")
    n = F.size
    principal = {closure_labels(F, [(a, b)]) for a in range(n) for b in range(a + 1, n)}
    gens = {p: [(i, lab) for i, lab in enumerate(p) if i != lab] for p in principal}
    found = {tuple(range(n))} | principal
    frontier = sorted(principal)
    while frontier:
        fresh = []
        for X in frontier:
            xg = [(i, lab) for i, lab in enumerate(X) if i != lab]
            for P in sorted(principal):
                J = closure_labels(F, xg + gens[P])
                if J not in found:
                    found.add(J)
                    fresh.append(J)
        frontier = fresh
    ordered = sorted(found, key=lambda lab: (-len(set(lab)), lab))
    return [FiniteCongruence(F, lab, check=False) for lab in ordered]


# ---------------------------------------------------------------------------
# homomorphisms and derived congruences


@dataclass(frozen=True)
class Homomorphism:
    source: Any
    target: Any
    fn: Callable[[Any], Any]
    name: str = "phi"

    def __call__(self, e):
        return self.fn(e)


def coefficient_map(ring: PolyRing, target_base: Base, scalar_map: Callable[[Scalar], Scalar]) -> Homomorphism:
    """A(x) -> A'(x) induced by a base homomorphism A -> A'."""
    target = PolyRing(target_base, ring.nvars, ring.laurent)

    def fn(f: Poly) -> Poly:
        out: dict = {}
        for exps, c in f.items():
            d = scalar_map(c)
            out[exps] = out[exps] + d if exps in out else d
        return Poly(target, out)

    return Homomorphism(ring, target, fn, f"coefficients {ring.base.name}->{target_base.name}")


class QuotientPullback(Congruence):
    """phi^{-1}(inner) for a surjective homomorphism phi."""

    family = "QuotientPullback"

    def __init__(self, surjection: Homomorphism, inner: Congruence):
        if inner.ring != surjection.target:
            raise RingMismatch("inner congruence does not live on the target of the surjection")
        self.ring = surjection.source
        self.surjection = surjection
        self.inner = inner
        # pullbacks of primes along unital homomorphisms are prime
        self.prime = inner.prime

    def _member(self, a, b):
        phi = self.surjection
        return self.inner.member(Pair(phi(a), phi(b)))

    def __str__(self):
        return f"pullback({self.surjection.name}; {self.inner})"


def _is_unit(v: Scalar) -> bool:
    try:
        v.inverse()
    except (ArithmeticError, ZeroDivisionError):
        return False
    return True


class EvalPullback(Congruence):
    """(f, g) in C iff (f(s), g(s)) in inner for a fixed substitution s.

    ``inner`` lives either on the same polynomial ring or, when every
    variable is assigned, on the base.
    """

    family = "EvalPullback"

    def __init__(self, ring: PolyRing, assignment: Mapping[int | str, Scalar], inner: Congruence):
        self.ring = ring
        self.assignment = {
            (ring.var_index(k) if isinstance(k, str) else k): v for k, v in assignment.items()
        }
        for i, v in self.assignment.items():
            if not 0 <= i < ring.nvars:
                raise KeyError(i)
            if v.base != ring.base:
                raise RingMismatch(f"assigned value {v!r} is not in {ring.base.name}")
            if ring.laurent and not _is_unit(v):
                raise UnsupportedQuery(
                    f"assigning the non-unit {v} in a Laurent ring is not a homomorphism"
                )
        total = len(self.assignment) == ring.nvars
        if inner.ring == ring:
            self._to_base = False
        elif inner.ring == ring.base and total:
            self._to_base = True
        else:
            raise RingMismatch(
                "inner congruence must live on the same ring, or on the base for a total assignment"
            )
        self.inner = inner
        self.prime = inner.prime

    def image(self, f: Poly):
        g = evaluate_hom(f, self.assignment)
        return g.constant_value() if self._to_base else g

    def _member(self, a, b):
        return self.inner.member(Pair(self.image(a), self.image(b)))

    def __str__(self):
        names = self.ring.var_names
        assign = ",".join(f"{names[i]}={v}" for i, v in sorted(self.assignment.items()))
        return f"evalpull({assign}; {self.inner})"


class Restriction(Congruence):
    """C|_S for a subring S embedded by ``embed``."""

    family = "Restriction"

    def __init__(self, inner: Congruence, subring, embed: Callable[[Any], Any]):
        self.inner = inner
        self.ring = subring
        self.embed = embed
        # restrictions of primes are prime; a trivial kernel stays trivial
        self.prime = inner.prime
        self.trivial_kernel = True if inner.trivial_kernel else None

    def _member(self, a, b):
        return self.inner.member(Pair(self.embed(a), self.embed(b)))

    def __str__(self):
        return f"{self.inner}|{self.ring.name}"


def member(C: Congruence, pair) -> bool:
    return C.member(pair)


def kernel_member(C: Congruence, e) -> bool:
    return C.kernel_member(e)


def restrict_to_base(C: Congruence) -> Congruence:
    """C restricted to the constants of a polynomial (or fraction) ring."""
    ring = C.ring
    base = ring.base
    if isinstance(C, Trivial):
        return Trivial(base)
    if isinstance(C, Improper):
        return Improper(base)
    return Restriction(C, base, ring.embed)


def restrict_to_subring(C: Congruence, nkeep: int) -> Congruence:
    """Restrict a congruence of A[x1..xn] to A[x1..x_nkeep] (or to A if 0)."""
    ring = C.ring
    if not isinstance(ring, PolyRing):
        raise UnsupportedQuery("only polynomial rings have variable subrings")
    if nkeep == 0:
        return restrict_to_base(C)
    if not 0 < nkeep <= ring.nvars:
        raise ValueError(f"cannot keep {nkeep} of {ring.nvars} variables")
    sub = PolyRing(ring.base, nkeep, ring.laurent)
    pad = (0,) * (ring.nvars - nkeep)

    def embed(f: Poly) -> Poly:
        return Poly(ring, {e + pad: c for e, c in f.items()})

    return Restriction(C, sub, embed)
