"""Semifields of fractions, congruence extension, principal congruences of
semifield domains and archimedean classes.

Supported carriers are registered explicitly: B, Z_max, Q_max, the
lexicographic monomial domains and semifields, and cancellative finite
tables.  Anything else is rejected rather than approximated.
"""
from __future__ import annotations

from .congruences import Congruence, Pair, Restriction, Trivial, as_finite
from .errors import NontrivialKernel, NotCancellative, UnsupportedFamily, UnsupportedQuery
from .polynomials import PolyRing
from .scalars import BOOL, INTMAX, RATMAX, Base, FiniteSemiring, LexMonomials, Scalar, finite_domain_report


def _check_supported(R) -> None:
    if isinstance(R, PolyRing):
        # (1+x)(1+x^2) = (1+x)(1+x+x^2) over any idempotent base
        raise NotCancellative(f"{R.name} is not cancellative")
    if R in (BOOL, INTMAX, RATMAX) or isinstance(R, LexMonomials):
        return
    if isinstance(R, FiniteSemiring):
        report = finite_domain_report(R)
        if not report.cancellative:
            raise NotCancellative(f"{R.name} is not cancellative: {report.witnesses['cancellative']}")
        return
    if isinstance(R, FractionRing):
        return
    raise UnsupportedFamily(f"no fraction theory registered for {getattr(R, 'name', R)}")


class FractionRing:
    """Frac(R) for a registered cancellative carrier R."""

    def __init__(self, R):
        _check_supported(R)
        if isinstance(R, FractionRing):
            R = R.base
        self.base = R

    @property
    def name(self) -> str:
        return f"Frac({self.base.name})"

    def __eq__(self, other):
        return isinstance(other, FractionRing) and other.base == self.base

    def __hash__(self):
        return hash(("Frac", self.base))

    def __str__(self):
        return self.name

    def frac(self, num: Scalar, den: Scalar | None = None) -> Frac:
        return Frac(self, num, self.base.one if den is None else den)

    def embed(self, a: Scalar) -> Frac:
        return Frac(self, a, self.base.one)

    @property
    def zero(self) -> Frac:
        return self.embed(self.base.zero)

    @property
    def one(self) -> Frac:
        return self.embed(self.base.one)

    def contains(self, e) -> bool:
        return isinstance(e, Frac) and e.ring == self

    @property
    def semifield(self) -> Base:
        """The base holding canonical representatives of fractions."""
        R = self.base
        if isinstance(R, LexMonomials):
            return R.fraction_semifield()
        return R


class Frac:
    """num / den, stored unreduced; equality is by cross-multiplication."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: FractionRing, num: Scalar, den: Scalar):
        R = ring.base
        if not (R.contains(num) and R.contains(den)):
            raise UnsupportedQuery(f"numerator and denominator must lie in {R.name}")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        self.ring = ring
        self.num = num
        self.den = den

    def _check(self, other):
        if not isinstance(other, Frac) or other.ring != self.ring:
            raise UnsupportedQuery("fractions over different carriers")

    def __add__(self, other: Frac) -> Frac:
        self._check(other)
        return Frac(self.ring, self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: Frac) -> Frac:
        self._check(other)
        return Frac(self.ring, self.num * other.num, self.den * other.den)

    def __pow__(self, n: int) -> Frac:
        if n < 0:
            return self.inverse() ** -n
        return Frac(self.ring, self.num**n, self.den**n)

    def inverse(self) -> Frac:
        if self.num.is_zero:
            raise ZeroDivisionError("0 has no inverse")
        return Frac(self.ring, self.den, self.num)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other):
        if not isinstance(other, Frac):
            return NotImplemented
        return other.ring == self.ring and self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash(to_semifield(self))

    def __le__(self, other: Frac) -> bool:
        return other + self == other

    def __ge__(self, other: Frac) -> bool:
        return self + other == self

    def __str__(self):
        if self.den == self.ring.base.one:
            return str(self.num)
        return f"{self.num} / {self.den}"

    def __repr__(self):
        return f"Frac({self.ring.base.name}: {self})"


def frac_arith(op: str, a: Frac, b: Frac) -> Frac:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def frac_equal(a: Frac, b: Frac) -> bool:
    a._check(b)
    return a == b


def to_semifield(e) -> Scalar:
    """Canonical image of an element in a registered semifield."""
    if isinstance(e, Frac):
        R = e.ring.base
        if isinstance(R, LexMonomials):
            F = R.fraction_semifield()
            if e.num.is_zero:
                return F.zero
            return Scalar(F, tuple(a - b for a, b in zip(e.num.value, e.den.value)))
        return e.num * e.den.inverse()
    if isinstance(e, Scalar):
        R = e.base
        if isinstance(R, LexMonomials) and not R.laurent:
            return Scalar(R.fraction_semifield(), e.value)
        if R in (BOOL, INTMAX, RATMAX) or isinstance(R, LexMonomials):
            return e
        if isinstance(R, FiniteSemiring) and finite_domain_report(R).cancellative:
            return e
    raise UnsupportedFamily(f"no semifield image registered for {e!r}")


def arch_class(e) -> int:
    """Archimedean class: 0 for the identity, else 1 for Z_max/Q_max and
    the 1-based position of the first nonzero exponent for lex families."""
    s = to_semifield(e)
    if s.is_zero:
        raise ValueError("zero has no archimedean class")
    F = s.base
    if s == F.one:
        return 0
    if F in (INTMAX, RATMAX):
        return 1
    if isinstance(F, LexMonomials):
        return next(i + 1 for i, v in enumerate(s.value) if v)
    # finite cancellative carriers are B, whose only nonzero element is 1
    raise UnsupportedFamily(f"no archimedean classes registered for {F.name}")


def _rank(cls: int) -> float:
    return float("inf") if cls == 0 else cls


def principal_member(x, pair) -> bool:
    """(a, b) in the congruence generated by (1, x), via archimedean classes."""
    a, b = pair
    if a.is_zero or b.is_zero:
        return a.is_zero and b.is_zero
    ratio = to_semifield(b) * to_semifield(a).inverse()
    return _rank(arch_class(ratio)) >= _rank(arch_class(x))


def semifield_dim(F) -> int:
    """Number of nontrivial archimedean classes of a registered semifield."""
    if isinstance(F, FractionRing):
        F = F.semifield
    if F == BOOL:
        return 0
    if F in (INTMAX, RATMAX):
        return 1
    if isinstance(F, LexMonomials):
        return F.k
    if isinstance(F, FiniteSemiring) and finite_domain_report(F).is_domain:
        return 0
    raise UnsupportedFamily(f"no semifield dimension registered for {getattr(F, 'name', F)}")


class Principal(Congruence):
    """<(1, x)> on a semifield domain.

    On a domain R that is not a semifield (the monomial domains, a
    fraction ring's carrier) this is the restriction of the principal
    congruence of Frac(R), which is again prime with trivial kernel.
    """

    family = "Principal"
    prime = True
    trivial_kernel = True

    def __init__(self, ring, x):
        if not ring.contains(x):
            raise UnsupportedQuery(f"{x} is not an element of {ring.name}")
        if x.is_zero:
            raise ValueError("the generator must be nonzero")
        arch_class(x)  # rejects unsupported families early
        self.ring = ring
        self.x = x

    @property
    def cls(self) -> int:
        return arch_class(self.x)

    def _member(self, a, b):
        return principal_member(self.x, (a, b))

    def __eq__(self, other):
        if isinstance(other, Principal) and other.ring == self.ring:
            return self.cls == other.cls
        if isinstance(other, Trivial) and other.ring == self.ring:
            return self.cls == 0
        return NotImplemented

    def __hash__(self):
        return hash(("Principal", self.ring, self.cls))

    def __str__(self):
        return f"principal({self.x})"


def top_generator(R) -> Scalar | None:
    """A generator of the largest proper congruence of a registered domain
    (None when that congruence is the diagonal)."""
    if R in (INTMAX, RATMAX):
        return R.scalar(1)
    if isinstance(R, LexMonomials):
        return R.generator(0)
    if R == BOOL or isinstance(R, FiniteSemiring):
        return None
    raise UnsupportedFamily(f"no collapse registered for {R.name}")


def collapse(ring) -> Congruence:
    """Identify all nonzero elements of a registered domain (quotient B)."""
    frac = isinstance(ring, FractionRing)
    x = top_generator(ring.base if frac else ring)
    if x is None:
        return Trivial(ring)
    return Principal(ring, ring.embed(x) if frac else x)


def _is_qc(C: Congruence) -> bool:
    if C.prime or isinstance(C, Trivial):
        return True
    if isinstance(C.ring, FiniteSemiring):
        from .primes import is_qc_finite

        return is_qc_finite(C.ring, C, cap=64)
    raise UnsupportedQuery(f"cannot certify that {C} is quotient cancellative")


def _has_trivial_kernel(C: Congruence) -> bool:
    if C.trivial_kernel is not None:
        return bool(C.trivial_kernel)
    if isinstance(C.ring, FiniteSemiring):
        return as_finite(C).trivial_kernel
    raise UnsupportedQuery(f"cannot decide the kernel of {C}")


class FracExtension(Congruence):
    """<C> in Frac(R) for a QC congruence C of R with trivial kernel."""

    family = "FracExtension"
    trivial_kernel = True

    def __init__(self, inner: Congruence):
        R = inner.ring
        self.ring = FractionRing(R)
        if not _has_trivial_kernel(inner):
            raise NontrivialKernel(f"{inner} has a nontrivial kernel; its extension is improper")
        if not _is_qc(inner):
            raise UnsupportedQuery(f"{inner} is not quotient cancellative")
        self.inner = inner
        self.prime = inner.prime

    def _member(self, a: Frac, b: Frac):
        return self.inner.member(Pair(a.num * b.den, b.num * a.den))

    def __str__(self):
        return f"fracext({self.inner})"


def extend(C: Congruence) -> FracExtension:
    return FracExtension(C)


def extend_member(C: Congruence, pair) -> bool:
    return FracExtension(C).member(pair)


def restrict_to_carrier(D: Congruence) -> Congruence:
    """D|_R for a congruence D of Frac(R)."""
    ring = D.ring
    if not isinstance(ring, FractionRing):
        raise UnsupportedQuery(f"{ring.name} is not a fraction semifield")
    return Restriction(D, ring.base, ring.embed)


class MonomialZeroing(Congruence):
    """Pullback of the diagonal along t_1..t_m -> 0 on a lex monomial domain.

    The map is a homomorphism only when 1 is the largest nonzero element
    (``sign=-1``) and the zeroed generators form a lex prefix; other
    choices are rejected.  Its kernel is every monomial involving a zeroed
    generator, so it is a prime with nontrivial kernel.
    """

    family = "EvalPullback"
    prime = True
    trivial_kernel = False

    def __init__(self, ring: LexMonomials, nzero: int):
        if not isinstance(ring, LexMonomials) or ring.laurent:
            raise UnsupportedQuery("zeroing generators needs a (non-Laurent) monomial domain")
        if ring.sign != -1:
            raise UnsupportedQuery(f"zeroing generators of {ring.name} is not a homomorphism")
        if not 1 <= nzero <= ring.k:
            raise ValueError(f"can zero 1..{ring.k} leading generators, not {nzero}")
        self.ring = ring
        self.nzero = nzero

    def image(self, e: Scalar) -> Scalar:
        if e.is_zero or any(e.value[: self.nzero]):
            return self.ring.zero
        return e

    def _member(self, a, b):
        return self.image(a) == self.image(b)

    def __str__(self):
        names = self.ring.generator_names()[: self.nzero]
        return "evalpull(" + ",".join(f"{n}=0" for n in names) + "; trivial)"
