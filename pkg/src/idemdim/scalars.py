"""Base semirings: B, Z_max, Q_max, table-defined finite B-algebras and
lexicographic monomial domains.

Every base is a small descriptor object that knows how to add and multiply
raw values; `Scalar` wraps a raw value together with its base so that the
arithmetic operators can refuse to mix elements of different semirings.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Any, Iterator

from .errors import (
    CarrierCap,
    InvalidSemiring,
    MalformedTable,
    TagMismatch,
)

VALIDATION_CAP = 16
DEFAULT_ENUMERATION_CAP = 6


def enumeration_cap() -> int:
    """Carrier size limit for exhaustive congruence enumeration
    (``IDEMDIM_CAP`` overrides the default)."""
    raw = os.environ.get("IDEMDIM_CAP")
    return int(raw) if raw else DEFAULT_ENUMERATION_CAP


class Base:
    """Descriptor of a base semiring.  Subclasses implement the raw operations."""

    tag: str = ""
    zero_value: Any = None
    one_value: Any = None
    is_semifield = False
    is_finite = False

    def add_values(self, u, v):
        raise NotImplementedError

    def mul_values(self, u, v):
        raise NotImplementedError

    def inverse_value(self, u):
        raise ArithmeticError(f"{u!r} has no inverse in {self.name}")

    def format_value(self, u) -> str:
        return str(u)

    def check_value(self, u) -> None:
        """Raise ValueError if `u` is not a raw value of this base."""

    @property
    def zero(self) -> Scalar:
        return Scalar(self, self.zero_value)

    @property
    def one(self) -> Scalar:
        return Scalar(self, self.one_value)

    def scalar(self, value) -> Scalar:
        self.check_value(value)
        return Scalar(self, value)

    def contains(self, e) -> bool:
        return isinstance(e, Scalar) and e.base == self

    def __str__(self):
        return self.name


class _BoolBase(Base):
    tag = "Bool"
    name = "B"
    zero_value = False
    one_value = True
    is_semifield = True
    is_finite = True

    def add_values(self, u, v):
        return u or v

    def mul_values(self, u, v):
        return u and v

    def inverse_value(self, u):
        if not u:
            raise ZeroDivisionError("0 has no inverse")
        return True

    def format_value(self, u):
        return "1" if u else "0"

    def check_value(self, u):
        if not isinstance(u, bool):
            raise ValueError(f"not a boolean: {u!r}")

    def elements(self) -> list[Scalar]:
        return [self.zero, self.one]

    def __reduce__(self):
        return "BOOL"


class _MaxPlusBase(Base):
    """Shared code of Z_max and Q_max; `None` is the bottom element."""

    zero_value = None
    is_semifield = True

    def add_values(self, u, v):
        if u is None:
            return v
        if v is None:
            return u
        return u if u >= v else v

    def mul_values(self, u, v):
        if u is None or v is None:
            return None
        return u + v

    def inverse_value(self, u):
        if u is None:
            raise ZeroDivisionError("-inf has no inverse")
        return -u

    def format_value(self, u):
        return "-inf" if u is None else str(u)


class _IntMaxBase(_MaxPlusBase):
    tag = "IntMax"
    name = "Zmax"
    one_value = 0

    def check_value(self, u):
        if u is not None and (isinstance(u, bool) or not isinstance(u, int)):
            raise ValueError(f"not an integer: {u!r}")

    def __reduce__(self):
        return "INTMAX"


class _RatMaxBase(_MaxPlusBase):
    tag = "RatMax"
    name = "Qmax"
    one_value = Fraction(0)

    def check_value(self, u):
        if u is not None and not isinstance(u, Fraction):
            raise ValueError(f"not an exact rational: {u!r}")

    def scalar(self, value) -> Scalar:
        if value is not None and isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        return super().scalar(value)

    def __reduce__(self):
        return "RATMAX"


BOOL = _BoolBase()
INTMAX = _IntMaxBase()
RATMAX = _RatMaxBase()


@dataclass(frozen=True, eq=False)
class LexMonomials(Base):
    """Monomials t1^e1...tk^ek plus a zero, added by lexicographic maximum.

    With ``laurent=False`` this is the monomial domain B[t]/lex (exponents in
    N^k); with ``laurent=True`` it is its semifield of fractions, the Z^k-lex
    semifield.  ``sign=-1`` reverses the order so that 1 is the largest
    nonzero element; those domains have primes with nontrivial kernels.
    """

    k: int
    laurent: bool = False
    sign: int = 1

    tag = "LexMono"
    zero_value = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one generator")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def name(self) -> str:
        stem = "lex" if self.laurent else "mon"
        return f"{'n' if self.sign < 0 else ''}{stem}{self.k}"

    @property
    def one_value(self):
        return (0,) * self.k

    @property
    def is_semifield(self):
        return self.laurent

    def __eq__(self, other):
        return (
            isinstance(other, LexMonomials)
            and (self.k, self.laurent, self.sign) == (other.k, other.laurent, other.sign)
        )

    def __hash__(self):
        return hash(("LexMonomials", self.k, self.laurent, self.sign))

    def order_key(self, u):
        return tuple(self.sign * e for e in u)

    def add_values(self, u, v):
        if u is None:
            return v
        if v is None:
            return u
        return u if self.order_key(u) >= self.order_key(v) else v

    def mul_values(self, u, v):
        if u is None or v is None:
            return None
        return tuple(a + b for a, b in zip(u, v))

    def inverse_value(self, u):
        if u is None:
            raise ZeroDivisionError("0 has no inverse")
        if not self.laurent and any(u):
            raise ArithmeticError(f"{self.format_value(u)} is not invertible in {self.name}")
        return tuple(-e for e in u)

    def check_value(self, u):
        if u is None:
            return
        if not isinstance(u, tuple) or len(u) != self.k or not all(isinstance(e, int) for e in u):
            raise ValueError(f"not an exponent vector of length {self.k}: {u!r}")
        if not self.laurent and min(u) < 0:
            raise ValueError("negative exponent in a non-Laurent monomial domain")

    def generator(self, i: int) -> Scalar:
        exps = [0] * self.k
        exps[i] = 1
        return Scalar(self, tuple(exps))

    def generator_names(self) -> list[str]:
        return [f"t{i + 1}" for i in range(self.k)]

    def format_value(self, u):
        if u is None:
            return "0"
        parts = []
        for name, e in zip(self.generator_names(), u):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def fraction_semifield(self) -> LexMonomials:
        return LexMonomials(self.k, True, self.sign)


@dataclass(frozen=True, eq=False)
class Scalar:
    """An element of a base semiring."""

    base: Base
    value: Any

    @property
    def tag(self) -> str:
        return self.base.tag

    @property
    def is_zero(self) -> bool:
        return self.value == self.base.zero_value

    def _check(self, other) -> None:
        if not isinstance(other, Scalar):
            raise TagMismatch(f"cannot combine scalar with {type(other).__name__}")
        if other.base is not self.base and other.base != self.base:
            raise TagMismatch(f"{self.base.name} vs {other.base.name}")

    def __add__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.base, self.base.add_values(self.value, other.value))

    def __mul__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.base, self.base.mul_values(self.value, other.value))

    def __pow__(self, n: int) -> Scalar:
        if n < 0:
            return self.inverse() ** (-n)
        result, square = self.base.one_value, self.value
        while n:
            if n & 1:
                result = self.base.mul_values(result, square)
            square = self.base.mul_values(square, square)
            n >>= 1
        return Scalar(self.base, result)

    def inverse(self) -> Scalar:
        return Scalar(self.base, self.base.inverse_value(self.value))

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return (other.base is self.base or other.base == self.base) and self.value == other.value

    def __hash__(self):
        return hash((self.base.tag, self.value))

    # natural order: a <= b iff a + b == b
    def __le__(self, other: Scalar) -> bool:
        return natural_leq(self, other)

    def __ge__(self, other: Scalar) -> bool:
        return natural_leq(other, self)

    def __lt__(self, other: Scalar) -> bool:
        return natural_leq(self, other) and self != other

    def __gt__(self, other: Scalar) -> bool:
        return natural_leq(other, self) and self != other

    def __str__(self):
        return self.base.format_value(self.value)

    def __repr__(self):
        return f"Scalar({self.base.name}, {self.base.format_value(self.value)})"


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def natural_leq(a: Scalar, b: Scalar) -> bool:
    """True iff a <= b in the order induced by idempotent addition."""
    a._check(b)
    return a.base.add_values(b.value, a.value) == b.value


def bool_scalar(v: bool) -> Scalar:
    return Scalar(BOOL, bool(v))


def zmax(v: int | None) -> Scalar:
    return INTMAX.scalar(v)


def qmax(v) -> Scalar:
    if v is None:
        return RATMAX.zero
    if isinstance(v, float):
        raise TypeError("floats are not exact; pass a Fraction, an int or a 'p/q' string")
    return RATMAX.scalar(Fraction(v))


# ---------------------------------------------------------------------------
# finite semirings


@dataclass
class AxiomReport:
    passed: bool
    violations: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    def __str__(self):
        if self.passed:
            return "all axioms hold"
        return "; ".join(f"{name} fails at {wit}" for name, wit in self.violations)


@dataclass(frozen=True, eq=False)
class FiniteSemiring(Base):
    """A table-defined finite B-algebra; elements are carrier indices."""

    name: str
    carrier: tuple[str, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero_index: int
    one_index: int

    tag = "FiniteElem"
    is_finite = True

    @property
    def zero_value(self):
        return self.zero_index

    @property
    def one_value(self):
        return self.one_index

    @property
    def size(self) -> int:
        return len(self.carrier)

    @property
    def is_semifield(self):
        return all(
            any(self.mul[a][b] == self.one_index for b in range(self.size))
            for a in range(self.size)
            if a != self.zero_index
        )

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FiniteSemiring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.carrier, self.add, self.mul, self.zero_index, self.one_index)

    def add_values(self, u, v):
        return self.add[u][v]

    def mul_values(self, u, v):
        return self.mul[u][v]

    def inverse_value(self, u):
        for b in range(self.size):
            if self.mul[u][b] == self.one_index:
                return b
        raise ArithmeticError(f"{self.carrier[u]} is not invertible in {self.name}")

    def format_value(self, u):
        return self.carrier[u]

    def check_value(self, u):
        if not isinstance(u, int) or not 0 <= u < self.size:
            raise ValueError(f"not a carrier index of {self.name}: {u!r}")

    def index(self, label: str) -> int:
        try:
            return self.carrier.index(label)
        except ValueError:
            raise MalformedTable(f"unknown label {label!r} in {self.name}") from None

    def element(self, label: str) -> Scalar:
        return Scalar(self, self.index(label))

    def elements(self) -> list[Scalar]:
        return [Scalar(self, i) for i in range(self.size)]

    def leq(self, i: int, j: int) -> bool:
        return self.add[j][i] == j

    def to_json(self) -> dict:
        lab = self.carrier
        return {
            "name": self.name,
            "carrier": list(lab),
            "add": [[lab[x] for x in row] for row in self.add],
            "mul": [[lab[x] for x in row] for row in self.mul],
            "zero": lab[self.zero_index],
            "one": lab[self.one_index],
        }


def _parse_table(desc: dict) -> FiniteSemiring:
    try:
        carrier = desc["carrier"]
        add, mul = desc["add"], desc["mul"]
        zero, one = desc["zero"], desc["one"]
    except (KeyError, TypeError) as exc:
        raise MalformedTable(f"missing field: {exc}") from None
    if not isinstance(carrier, list) or not carrier or not all(isinstance(c, str) for c in carrier):
        raise MalformedTable("carrier must be a nonempty list of strings")
    if len(set(carrier)) != len(carrier):
        raise MalformedTable("duplicate carrier labels")
    n = len(carrier)
    if n > VALIDATION_CAP:
        raise CarrierCap(f"carrier of size {n} exceeds the validation cap {VALIDATION_CAP}")
    index = {label: i for i, label in enumerate(carrier)}

    def lookup(label):
        if label not in index:
            raise MalformedTable(f"unknown label {label!r}")
        return index[label]

    def table(rows, what):
        if not isinstance(rows, list) or len(rows) != n:
            raise MalformedTable(f"{what} table must have {n} rows")
        out = []
        for row in rows:
            if not isinstance(row, list) or len(row) != n:
                raise MalformedTable(f"{what} table must be {n}x{n}")
            out.append(tuple(lookup(x) for x in row))
        return tuple(out)

    return FiniteSemiring(
        name=str(desc.get("name", "table")),
        carrier=tuple(carrier),
        add=table(add, "add"),
        mul=table(mul, "mul"),
        zero_index=lookup(zero),
        one_index=lookup(one),
    )


def check_axioms(F: FiniteSemiring) -> AxiomReport:
    """Exhaustively check the commutative idempotent semiring axioms."""
    n, A, M, z, o = F.size, F.add, F.mul, F.zero_index, F.one_index
    lab = F.carrier
    found: dict[str, tuple[str, ...]] = {}

    def fail(name, *wit):
        found.setdefault(name, tuple(lab[w] for w in wit))

    for a in range(n):
        if A[a][a] != a:
            fail("additive idempotency", a)
        if A[a][z] != a:
            fail("zero is additive identity", a)
        if M[a][z] != z:
            fail("zero annihilates", a)
        if M[a][o] != a:
            fail("one is multiplicative identity", a)
        for b in range(n):
            if A[a][b] != A[b][a]:
                fail("additive commutativity", a, b)
            if M[a][b] != M[b][a]:
                fail("multiplicative commutativity", a, b)
    for a, b, c in product(range(n), repeat=3):
        if A[A[a][b]][c] != A[a][A[b][c]]:
            fail("additive associativity", a, b, c)
        if M[M[a][b]][c] != M[a][M[b][c]]:
            fail("multiplicative associativity", a, b, c)
        if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
            fail("distributivity", a, b, c)
    violations = list(found.items())
    return AxiomReport(passed=not violations, violations=violations)


def load_finite_semiring(desc: dict | str | Path) -> FiniteSemiring | AxiomReport:
    """Parse and validate a table description.

    `desc` is a parsed JSON object or a path to one.  Returns the semiring, or
    the failing `AxiomReport`.  Structural problems raise `MalformedTable`.
    """
    if isinstance(desc, (str, Path)):
        path = Path(desc)
        desc = json.loads(path.read_text())
        desc.setdefault("name", path.stem)
    F = _parse_table(desc)
    report = check_axioms(F)
    return F if report.passed else report


def read_semiring(desc: dict | str | Path) -> FiniteSemiring:
    """Like `load_finite_semiring` but raises `InvalidSemiring` on failure."""
    result = load_finite_semiring(desc)
    if isinstance(result, AxiomReport):
        raise InvalidSemiring(result)
    return result


@dataclass
class DomainReport:
    cancellative: bool
    totally_ordered: bool
    is_domain: bool
    witnesses: dict[str, tuple[str, ...]] = field(default_factory=dict)


def finite_domain_report(F: FiniteSemiring) -> DomainReport:
    n, A, M, z = F.size, F.add, F.mul, F.zero_index
    lab = F.carrier
    witnesses = {}
    cancellative = True
    for a in range(n):
        if a == z:
            continue
        seen: dict[int, int] = {}
        for b in range(n):
            prod_ = M[a][b]
            if prod_ in seen:
                cancellative = False
                witnesses["cancellative"] = (lab[a], lab[seen[prod_]], lab[b])
                break
            seen[prod_] = b
        if not cancellative:
            break
    totally_ordered = True
    for a in range(n):
        for b in range(a + 1, n):
            if A[a][b] not in (a, b):
                totally_ordered = False
                witnesses["totally_ordered"] = (lab[a], lab[b])
                break
        if not totally_ordered:
            break
    return DomainReport(cancellative, totally_ordered, cancellative and totally_ordered, witnesses)


def bundled_corpus_dir() -> Path:
    return Path(__file__).parent / "corpus"


def bundled_corpus() -> list[FiniteSemiring]:
    """All bundled finite semirings, in file-name order."""
    return [read_semiring(p) for p in sorted(bundled_corpus_dir().glob("*.json"))]


def corpus_semiring(name: str) -> FiniteSemiring:
    return read_semiring(bundled_corpus_dir() / f"{name}.json")


def iter_elements(base: Base) -> Iterator[Scalar]:
    if not base.is_finite:
        raise ValueError(f"{base.name} is infinite")
    yield from base.elements()
