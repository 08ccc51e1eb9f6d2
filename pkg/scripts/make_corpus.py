"""Regenerate the bundled corpus of finite idempotent semirings.

Named tables are written by hand.  The random ones are quotients of
power-set semirings P(M) (union, setwise product) of small commutative
monoids M by congruences generated from random pairs, kept when they have
3 to 5 elements and are new up to isomorphism.

    python3 scripts/make_corpus.py [--seed N] [--count K] [--out DIR]
"""
from __future__ import annotations

import argparse
import json
import random
from itertools import permutations
from pathlib import Path

from idemdim.congruences import closure_labels, quotient_semiring, FiniteCongruence
from idemdim.scalars import FiniteSemiring, bundled_corpus_dir, check_axioms

LABELS = ["0", "1", "a", "b", "c", "d", "e", "f"]


def table(name, carrier, add, mul, zero="0", one="1") -> FiniteSemiring:
    idx = {c: i for i, c in enumerate(carrier)}
    n = len(carrier)
    F = FiniteSemiring(
        name=name,
        carrier=tuple(carrier),
        add=tuple(tuple(idx[add(x, y)] for y in carrier) for x in carrier),
        mul=tuple(tuple(idx[mul(x, y)] for y in carrier) for x in carrier),
        zero_index=idx[zero],
        one_index=idx[one],
    )
    assert F.size == n and check_axioms(F).passed, name
    return F


def chain_table(name, labels, mul):
    """A totally ordered semiring: labels are listed bottom to top."""
    rank = {c: i for i, c in enumerate(labels)}
    return table(name, labels, lambda x, y: x if rank[x] >= rank[y] else y, mul)


def named_tables() -> list[FiniteSemiring]:
    out = []
    out.append(table("b", ["0", "1"], lambda x, y: max(x, y), lambda x, y: min(x, y)))

    # 0 < 1 < a, a*a = a
    def t3_mul(x, y):
        if "0" in (x, y):
            return "0"
        return "a" if "a" in (x, y) else "1"

    out.append(chain_table("t3", ["0", "1", "a"], t3_mul))

    # B x B with p = (1,0), q = (0,1)
    pairs = {"0": (0, 0), "p": (1, 0), "q": (0, 1), "1": (1, 1)}
    back = {v: k for k, v in pairs.items()}
    out.append(
        table(
            "bxb",
            ["0", "p", "q", "1"],
            lambda x, y: back[tuple(max(u, v) for u, v in zip(pairs[x], pairs[y]))],
            lambda x, y: back[tuple(min(u, v) for u, v in zip(pairs[x], pairs[y]))],
        )
    )

    # the three-element chain lattice, meet as product
    rank3 = {"0": 0, "m": 1, "1": 2}
    out.append(chain_table("chain3", ["0", "m", "1"], lambda x, y: min(x, y, key=rank3.get)))

    # Z_max on {-inf, 0, 1, 2} with products saturated at 2
    vals = {"0": None, "1": 0, "a": 1, "b": 2}
    lab = {v: k for k, v in vals.items()}

    def trunc_mul(x, y):
        u, v = vals[x], vals[y]
        return "0" if u is None or v is None else lab[min(u + v, 2)]

    out.append(chain_table("trunc4", ["0", "1", "a", "b"], trunc_mul))

    # 0 < e < 1 with e*e = 0
    def nil_mul(x, y):
        if "0" in (x, y):
            return "0"
        if x == "1":
            return y
        if y == "1":
            return x
        return "0"

    out.append(chain_table("nil3", ["0", "e", "1"], nil_mul))
    return out


# small commutative monoids, identity first, as multiplication tables
MONOIDS = {
    "z2": [[0, 1], [1, 0]],
    "semilattice2": [[0, 1], [1, 1]],
    "z3": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
    "chain3": [[0, 1, 2], [1, 1, 2], [2, 2, 2]],
    "nilpotent3": [[0, 1, 2], [1, 2, 2], [2, 2, 2]],
    "z2zero": [[0, 1, 2], [1, 0, 2], [2, 2, 2]],
}


def powerset_semiring(name: str, mon: list[list[int]]) -> FiniteSemiring:
    m = len(mon)
    subsets = list(range(1 << m))

    def mul(s, t):
        out = 0
        for i in range(m):
            if s >> i & 1:
                for j in range(m):
                    if t >> j & 1:
                        out |= 1 << mon[i][j]
        return out

    return FiniteSemiring(
        name=f"P({name})",
        carrier=tuple(str(s) for s in subsets),
        add=tuple(tuple(s | t for t in subsets) for s in subsets),
        mul=tuple(tuple(mul(s, t) for t in subsets) for s in subsets),
        zero_index=0,
        one_index=1,
    )


def relabel(F: FiniteSemiring, name: str) -> FiniteSemiring:
    """Rename elements 0, 1, a, b, ... with zero and one first."""
    rest = [i for i in range(F.size) if i not in (F.zero_index, F.one_index)]
    order = [F.zero_index, F.one_index] + rest
    pos = {old: new for new, old in enumerate(order)}
    return FiniteSemiring(
        name=name,
        carrier=tuple(LABELS[: F.size]),
        add=tuple(tuple(pos[F.add[a][b]] for b in order) for a in order),
        mul=tuple(tuple(pos[F.mul[a][b]] for b in order) for a in order),
        zero_index=0,
        one_index=1,
    )


def iso_key(F: FiniteSemiring):
    """Smallest table encoding over relabelings fixing 0 and 1."""
    rest = [i for i in range(F.size) if i not in (F.zero_index, F.one_index)]
    best = None
    for perm in permutations(rest):
        order = [F.zero_index, F.one_index, *perm]
        pos = {old: new for new, old in enumerate(order)}
        key = tuple(pos[T[a][b]] for T in (F.add, F.mul) for a in order for b in order)
        if best is None or key < best:
            best = key
    return F.size, best


def random_tables(seed: int, count: int, seen: set) -> list[FiniteSemiring]:
    rng = random.Random(seed)
    bases = [powerset_semiring(k, v) for k, v in MONOIDS.items()]
    out = []
    attempts = 0
    while len(out) < count and attempts < 20000:
        attempts += 1
        P = rng.choice(bases)
        n = P.size
        gens = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(1, 3))]
        labels = closure_labels(P, gens)
        size = len(set(labels))
        if not 3 <= size <= 5:
            continue
        Q, _ = quotient_semiring(P, FiniteCongruence(P, labels, check=False))
        key = iso_key(Q)
        if key in seen:
            continue
        seen.add(key)
        out.append(relabel(Q, f"rand_{len(out) + 1:02d}"))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20240517)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--out", type=Path, default=bundled_corpus_dir())
    args = ap.parse_args(argv)

    named = named_tables()
    seen = {iso_key(F) for F in named}
    tables = named + random_tables(args.seed, args.count, seen)
    args.out.mkdir(parents=True, exist_ok=True)
    for F in tables:
        path = args.out / f"{F.name}.json"
        path.write_text(json.dumps(F.to_json(), indent=1) + "\n")
        print(f"{path}  size {F.size}")


if __name__ == "__main__":
    main()
