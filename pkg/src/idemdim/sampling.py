"""Seeded random elements and small deterministic probe sets."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from .polynomials import Poly, PolyRing
from .scalars import BOOL, INTMAX, RATMAX, FiniteSemiring, LexMonomials, Scalar
from .semifields import Frac, FractionRing

DEFAULT_SEED = 20240517


def rng_for(seed: int | None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def random_scalar(rng: random.Random, base, *, nonzero: bool = False, spread: int = 4) -> Scalar:
    if base == BOOL:
        return BOOL.one if nonzero or rng.random() < 0.7 else BOOL.zero
    if not nonzero and rng.random() < 0.1:
        return base.zero
    if base == INTMAX:
        return INTMAX.scalar(rng.randint(-spread, spread))
    if base == RATMAX:
        return RATMAX.scalar(Fraction(rng.randint(-4 * spread, 4 * spread), rng.randint(1, 4)))
    if isinstance(base, LexMonomials):
        lo = -spread if base.laurent else 0
        return Scalar(base, tuple(rng.randint(lo, spread) for _ in range(base.k)))
    if isinstance(base, FiniteSemiring):
        choices = [i for i in range(base.size) if not (nonzero and i == base.zero_index)]
        return Scalar(base, rng.choice(choices))
    raise ValueError(f"cannot sample from {base.name}")


def random_poly(
    rng: random.Random, ring: PolyRing, *, max_terms: int = 3, degree: int = 2, nonzero: bool = False
) -> Poly:
    lo = -degree if ring.laurent else 0
    while True:
        terms = {}
        for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
            exps = tuple(rng.randint(lo, degree) for _ in range(ring.nvars))
            terms[exps] = random_scalar(rng, ring.base, nonzero=True)
        f = Poly(ring, terms)
        if not (nonzero and f.is_zero):
            return f


def random_frac(rng: random.Random, ring: FractionRing, *, nonzero: bool = False) -> Frac:
    num = random_scalar(rng, ring.base, nonzero=nonzero, spread=3)
    den = random_scalar(rng, ring.base, nonzero=True, spread=3)
    return Frac(ring, num, den)


def random_element(rng: random.Random, ring, *, nonzero: bool = False):
    if isinstance(ring, PolyRing):
        return random_poly(rng, ring, nonzero=nonzero)
    if isinstance(ring, FractionRing):
        return random_frac(rng, ring, nonzero=nonzero)
    return random_scalar(rng, ring, nonzero=nonzero)


def probe_scalars(base) -> list[Scalar]:
    """A small deterministic set of base elements, zero and one included."""
    if base == BOOL:
        return [BOOL.zero, BOOL.one]
    if base == INTMAX:
        return [INTMAX.zero] + [INTMAX.scalar(v) for v in range(-2, 3)]
    if base == RATMAX:
        vals = [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(1), Fraction(5, 2)]
        return [RATMAX.zero] + [RATMAX.scalar(v) for v in vals]
    if isinstance(base, FiniteSemiring):
        return base.elements()
    if isinstance(base, LexMonomials):
        lo = -1 if base.laurent else 0
        vecs = product(range(lo, 2), repeat=base.k) if base.k <= 3 else [
            tuple(int(i == j) for j in range(base.k)) for i in range(-1, base.k)
        ]
        return [base.zero] + [Scalar(base, v) for v in vecs]
    raise ValueError(f"no probes for {base.name}")


def _probe_exponents(ring: PolyRing) -> list[tuple[int, ...]]:
    n = ring.nvars
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    out = [(0,) * n] + unit + [tuple(2 * e for e in u) for u in unit]
    if ring.laurent:
        out += [tuple(-e for e in u) for u in unit]
    for i, j in combinations(range(n), 2):
        out.append(tuple(a + b for a, b in zip(unit[i], unit[j])))
        if ring.laurent:
            out.append(tuple(a - b for a, b in zip(unit[i], unit[j])))
    return out


def probe_elements(ring) -> list:
    """Probe elements of a polynomial ring: zero, small monomials with a
    few coefficients, and sums of two of them."""
    if not isinstance(ring, PolyRing):
        return probe_scalars(ring)
    nonzero = [c for c in probe_scalars(ring.base) if not c.is_zero]
    one = ring.base.one
    coeffs = [one] + [c for c in nonzero if c != one][:2]
    monos = [ring.monomial(e, c) for e in _probe_exponents(ring) for c in coeffs]
    unit_monos = [ring.monomial(e) for e in _probe_exponents(ring)]
    sums = [f + g for f, g in combinations(unit_monos[:8], 2)]
    sums += [f + g for f, g in zip(monos, monos[3:])]
    out, seen = [], set()
    for f in [ring.zero] + monos + sums:
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def probe_pairs(ring, limit: int = 600, seed: int | None = None) -> list[tuple]:
    """Pairs of probe elements; a seeded subsample when there are too many."""
    elems = probe_elements(ring)
    pairs = list(combinations(elems, 2))
    if len(pairs) <= limit:
        return pairs
    return rng_for(seed).sample(pairs, limit)
