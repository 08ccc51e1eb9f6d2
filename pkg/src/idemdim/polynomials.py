"""Formal polynomial and Laurent polynomial semirings over a base.

Polynomials are formal: two polynomials are equal only when their
coefficient maps are equal, even if they induce the same function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NegativeExponentAtZero, RingMismatch
from .scalars import Base, Scalar

_ALIASES = ("x", "y", "z")

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class PolyRing:
    """A[x1..xn] (``laurent=False``) or A(x1..xn) (``laurent=True``)."""

    base: Base
    nvars: int
    laurent: bool = False

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("a polynomial ring needs at least one variable")

    @property
    def name(self) -> str:
        names = ",".join(self.var_names)
        return f"{self.base.name}({names})" if self.laurent else f"{self.base.name}[{names}]"

    @property
    def var_names(self) -> tuple[str, ...]:
        if self.nvars <= len(_ALIASES):
            return _ALIASES[: self.nvars]
        return tuple(f"x{i + 1}" for i in range(self.nvars))

    def var_index(self, name: str) -> int:
        if name in self.var_names:
            return self.var_names.index(name)
        if name.startswith("x") and name[1:].isdigit():
            i = int(name[1:]) - 1
            if 0 <= i < self.nvars:
                return i
        raise KeyError(name)

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return self.const(self.base.one)

    def const(self, c: Scalar) -> Poly:
        return self.monomial((0,) * self.nvars, c)

    embed = const

    def monomial(self, exps: Iterable[int], coeff: Scalar | None = None) -> Poly:
        exps = tuple(exps)
        coeff = self.base.one if coeff is None else coeff
        return Poly(self, {exps: coeff})

    def var(self, i: int | str) -> Poly:
        if isinstance(i, str):
            i = self.var_index(i)
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(exps)

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def from_terms(self, terms: Mapping[Exponents, Scalar]) -> Poly:
        return Poly(self, dict(terms))

    def contains(self, e) -> bool:
        return isinstance(e, Poly) and e.ring == self

    def __str__(self):
        return self.name


class Poly:
    """Canonical polynomial: a finite map from exponent vectors to nonzero
    coefficients.  Instances are immutable."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[Exponents, Scalar]):
        clean = {}
        for exps, c in terms.items():
            if len(exps) != ring.nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {ring.name}")
            if not ring.laurent and min(exps, default=0) < 0:
                raise ValueError(f"negative exponent in {ring.name}")
            if c.base != ring.base:
                raise RingMismatch(f"coefficient {c!r} is not in {ring.base.name}")
            if not c.is_zero:
                clean[exps] = c
        self.ring = ring
        self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict[Exponents, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> frozenset[Exponents]:
        return frozenset(self._terms)

    def coeff(self, exps: Exponents) -> Scalar:
        return self._terms.get(tuple(exps), self.ring.base.zero)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.coeff((0,) * self.ring.nvars)

    def __len__(self):
        return len(self._terms)

    def _check(self, other) -> None:
        if not isinstance(other, Poly) or other.ring != self.ring:
            other_name = other.ring.name if isinstance(other, Poly) else type(other).__name__
            raise RingMismatch(f"{self.ring.name} vs {other_name}")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return self.ring.const(other)
        return other

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        self._check(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            out[exps] = out[exps] + c if exps in out else c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        self._check(other)
        out: dict[Exponents, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            if not (self.ring.laurent and self.is_monomial()):
                raise ValueError("only Laurent monomials have negative powers")
            ((exps, c),) = self._terms.items()
            return self.ring.monomial((-e * -n for e in exps), c.inverse() ** -n)
        result, square = self.ring.one, self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __le__(self, other: Poly) -> bool:
        return natural_leq_poly(self, other)

    def __ge__(self, other: Poly) -> bool:
        return natural_leq_poly(other, self)

    def sorted_terms(self) -> list[tuple[Exponents, Scalar]]:
        """Terms in graded-lexicographic order, largest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.ring.name}: {format_poly(self)})"


def format_monomial(ring: PolyRing, exps: Exponents) -> str:
    parts = []
    for name, e in zip(ring.var_names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_scalar(c: Scalar) -> str:
    text = str(c)
    base = c.base
    if base.tag == "FiniteElem" and not _plain_label(text):
        return "'" + text.replace("'", "\\'") + "'"
    return text


def _plain_label(text: str) -> bool:
    return bool(text) and (text.isidentifier() or text.isdigit())


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return format_scalar(f.ring.base.zero)
    one = f.ring.base.one
    out = []
    for exps, c in f.sorted_terms():
        mono = format_monomial(f.ring, exps)
        if not mono:
            out.append(format_scalar(c))
        elif c == one:
            out.append(mono)
        else:
            out.append(f"{format_scalar(c)}*{mono}")
    return " + ".join(out)


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def natural_leq_poly(f: Poly, g: Poly) -> bool:
    """f <= g in the natural order, i.e. g + f == g."""
    f._check(g)
    return g + f == g


def evaluate_hom(f: Poly, assignment: Mapping[int | str, Scalar]) -> Poly:
    """Substitute scalars for some variables; the rest stay symbolic.

    The result lives in the same ring (a total assignment gives a constant).
    """
    ring = f.ring
    subs: dict[int, Scalar] = {}
    for key, value in assignment.items():
        i = ring.var_index(key) if isinstance(key, str) else key
        if not 0 <= i < ring.nvars:
            raise KeyError(key)
        if not isinstance(value, Scalar) or value.base != ring.base:
            raise RingMismatch(f"assigned value {value!r} is not in {ring.base.name}")
        subs[i] = value
    if not subs:
        return f
    out: dict[Exponents, Scalar] = {}
    for exps, c in f.items():
        coeff = c
        new_exps = list(exps)
        for i, value in subs.items():
            e = exps[i]
            if e < 0 and value.is_zero:
                raise NegativeExponentAtZero(
                    f"{ring.var_names[i]} has exponent {e} and is assigned zero"
                )
            coeff = coeff * value**e
            new_exps[i] = 0
        key = tuple(new_exps)
        out[key] = out[key] + coeff if key in out else coeff
    return Poly(ring, out)
