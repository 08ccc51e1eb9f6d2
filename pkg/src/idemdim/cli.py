"""idemdim command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .congruences import Pair
from .errors import IdemdimError, InvalidSemiring, UnsupportedQuery
from .harness import (
    CLAIMS,
    VerificationReport,
    base_dimension,
    build_polynomial_chain,
    enumerate_congruences_finite,
    resolve_base,
    verify_chain,
)
from .parser import parse_congruence, parse_element, parse_expression, parse_pair, parse_ring_spec, scalar_base
from .polynomials import PolyRing, evaluate_hom
from .primes import irreducibility_witness, prime_witness, qc_witness
from .scalars import FiniteSemiring, corpus_semiring, read_semiring


class UsageError(Exception):
    pass


def _bool(v: bool) -> str:
    return "true" if v else "false"


def _load_table(arg: str) -> FiniteSemiring:
    path = Path(arg)
    if path.exists():
        return read_semiring(path)
    try:
        return corpus_semiring(arg)
    except (KeyError, FileNotFoundError):
        pass
    base = resolve_base(arg)
    if not isinstance(base, FiniteSemiring):
        raise UsageError(f"{arg} is not a finite table")
    return base


def _ring(args):
    table = _load_table(args.table) if args.table else None
    if args.ring:
        return parse_ring_spec(args.ring, table)
    if table is not None:
        return table
    raise UsageError("give --ring or --table")


def _cong(args, ring):
    if not args.cong:
        raise UsageError("this verb needs --cong")
    return parse_congruence(args.cong, ring, args.cap)


def _finite(ring) -> FiniteSemiring:
    if not isinstance(ring, FiniteSemiring):
        raise UnsupportedQuery(f"{ring.name} is infinite; this decider needs a finite carrier")
    return ring


def _label_pair(F: FiniteSemiring, pair):
    return "(" + ", ".join(F.carrier[i] for i in pair) + ")"


# ---------------------------------------------------------------------------
# verbs; each returns (exit code, text lines, json payload)


def cmd_eval(args):
    ring = _ring(args)
    value = parse_expression(args.expr, ring)
    if args.assign:
        if not isinstance(ring, PolyRing) or isinstance(value, Pair):
            raise UsageError("--assign needs a polynomial expression")
        assignment = {}
        for item in args.assign.split(","):
            name, eq, text = item.partition("=")
            if not eq:
                raise UsageError(f"assignment {item!r} needs '='")
            try:
                ring.var_index(name.strip())
            except KeyError:
                raise UsageError(f"unknown variable {name.strip()!r}") from None
            assignment[name.strip()] = parse_element(text, ring.base)
        value = evaluate_hom(value, assignment)
    return 0, [str(value)], {"value": str(value)}


def cmd_leq(args):
    ring = _ring(args)
    a = parse_element(args.lhs, ring)
    b = parse_element(args.rhs, ring)
    result = a + b == b
    return 0, [f"leq: {_bool(result)}"], {"leq": result}


def cmd_member(args):
    ring = _ring(args)
    C = _cong(args, ring)
    pair = parse_pair(args.pair, ring)
    result = C.member(pair)
    return 0, [f"member: {_bool(result)}"], {"congruence": str(C), "pair": str(pair), "member": result}


def cmd_kernel(args):
    ring = _ring(args)
    C = _cong(args, ring)
    e = parse_element(args.expr, ring)
    result = C.kernel_member(e)
    return 0, [f"kernel: {_bool(result)}"], {"congruence": str(C), "element": str(e), "kernel": result}


def cmd_is_prime(args):
    ring = _ring(args)
    C = _cong(args, ring)
    if isinstance(ring, FiniteSemiring):
        wit = prime_witness(ring, C, args.cap)
        lines = [f"prime: {_bool(wit is None)}"]
        payload = {"prime": wit is None, "method": "exhaustive", "witness": None}
        if wit == ("improper",):
            lines.append("reason: improper")
            payload["witness"] = "improper"
        elif wit is not None:
            text = [_label_pair(ring, w) for w in wit]
            lines.append(f"witness: alpha = {text[0]}, beta = {text[1]}")
            payload["witness"] = text
        return 0, lines, payload
    if C.prime is None:
        raise UnsupportedQuery(f"primality of {C} is not decidable here")
    return 0, [f"prime: {_bool(C.prime)} (family contract)"], {"prime": bool(C.prime), "method": "family contract"}


def cmd_is_qc(args):
    ring = _ring(args)
    C = _cong(args, ring)
    if isinstance(ring, FiniteSemiring):
        wit = qc_witness(ring, C, args.cap)
        lines = [f"qc: {_bool(wit is None)}"]
        payload = {"qc": wit is None, "method": "exhaustive", "witness": None}
        if wit is not None:
            c, a, b = (ring.carrier[i] for i in wit)
            lines.append(f"witness: c = {c}, a = {a}, b = {b}")
            payload["witness"] = [c, a, b]
        return 0, lines, payload
    if C.prime or C.family == "IntersectQC":
        return 0, ["qc: true (family contract)"], {"qc": True, "method": "family contract"}
    raise UnsupportedQuery(f"quotient cancellativity of {C} is not decidable here")


def cmd_is_irreducible(args):
    ring = _finite(_ring(args))
    C = _cong(args, ring)
    wit = irreducibility_witness(ring, C, cap=args.cap)
    lines = [f"irreducible: {_bool(wit is None)}"]
    payload = {"irreducible": wit is None, "witness": None}
    if wit is not None:
        lines.append(f"witness: {wit[0]} meet {wit[1]}")
        payload["witness"] = [str(w) for w in wit]
    return 0, lines, payload


def cmd_congruences(args):
    F = _finite(_ring(args))
    lat = enumerate_congruences_finite(F, args.cap)
    lines, rows = [], []
    for i, C in enumerate(lat.congruences):
        flags = [name for name, on in (("prime", lat.prime[i]), ("qc", lat.qc[i]), ("irreducible", lat.irreducible[i])) if on]
        lines.append(f"C{i} {C}" + (" " + " ".join(flags) if flags else ""))
        rows.append({"index": i, "classes": str(C), "prime": lat.prime[i], "qc": lat.qc[i], "irreducible": lat.irreducible[i]})
    lines.append(f"total: {len(lat)}")
    covers = [[i, j] for i, j in lat.covers()]
    return 0, lines, {"semiring": F.name, "congruences": rows, "covers": covers}


def cmd_dim(args):
    ring = _ring(args)
    if isinstance(ring, PolyRing):
        raise UnsupportedQuery("dimensions of polynomial rings come from 'chain' or 'verify'")
    A = scalar_base(ring)
    if A is not ring:
        raise UnsupportedQuery("dim takes a base semiring")
    d, how = base_dimension(A, args.cap)
    return 0, [f"dim = {d}", f"method: {how}"], {"semiring": A.name, "dim": d, "method": how}


def _report_result(rep: VerificationReport):
    code = 0 if rep.passed else 1
    return code, rep.to_text().splitlines(), rep.to_json()


def cmd_chain(args):
    ring = _ring(args)
    if not isinstance(ring, PolyRing):
        raise UsageError("chain needs a polynomial ring, e.g. --ring zmax,laurent,2")
    chain = build_polynomial_chain(ring.base, ring.nvars, "laurent" if ring.laurent else "poly", args.cap)
    rep = VerificationReport("chain", {"ring": ring.name})
    rep.notes.append(chain.note)
    verify_chain(chain, rep, args.seed)
    rep.dims[ring.name + " (lower bound)"] = chain.length
    rep.summary = f"length = {chain.length}"
    return _report_result(rep)


def cmd_verify(args):
    if not args.base:
        raise UsageError("verify needs --base")
    params = {"base": args.base, "seed": args.seed}
    if args.claim == "dplusone":
        params.update(mode=args.mode, n=args.n, cap=args.cap)
    elif args.claim == "laurentdim":
        params.update(n=args.n)
    else:
        params.update(cap=args.cap)
    from .harness import verify_theorems

    return _report_result(verify_theorems(args.claim, **params))


COMMANDS = {
    "eval": cmd_eval,
    "leq": cmd_leq,
    "member": cmd_member,
    "kernel": cmd_kernel,
    "is-prime": cmd_is_prime,
    "is-qc": cmd_is_qc,
    "is-irreducible": cmd_is_irreducible,
    "congruences": cmd_congruences,
    "dim": cmd_dim,
    "chain": cmd_chain,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="base[,poly|laurent|frac[,n]], e.g. b,laurent,2")
    common.add_argument("--table", help="finite semiring table (JSON file or bundled name)")
    common.add_argument("--cong", help="congruence literal, e.g. weight[[1,0]]")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=None, help="largest carrier to enumerate (default: $IDEMDIM_CAP or 6)")

    p = argparse.ArgumentParser(prog="idemdim", description="Congruences and dimension of idempotent semirings.")
    sub = p.add_subparsers(dest="verb", metavar="verb")
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("eval", "parse and print a canonical value")
    s.add_argument("expr")
    s.add_argument("--assign", help="substitute variables, e.g. x=1,y=0")
    s = add("leq", "natural order a <= b (a + b = b)")
    s.add_argument("lhs")
    s.add_argument("rhs")
    add("member", "is a pair in the congruence").add_argument("pair")
    add("kernel", "is an element in the kernel").add_argument("expr")
    add("is-prime", "primality (exhaustive on finite carriers)")
    add("is-qc", "quotient cancellativity (exhaustive on finite carriers)")
    add("is-irreducible", "irreducibility (finite carriers only)")
    add("congruences", "list all congruences of a finite table")
    add("dim", "Krull dimension of a base")
    add("chain", "build and check a prime chain in a polynomial ring")
    s = add("verify", "run an executable dimension check")
    s.add_argument("claim", choices=sorted(CLAIMS))
    s.add_argument("--base")
    s.add_argument("--mode", choices=("poly", "laurent"), default="laurent")
    s.add_argument("--n", type=int, default=1)
    return p


def _emit(args, verb: str, code: int, lines: list[str], payload: dict, out) -> None:
    if getattr(args, "format", "text") == "json":
        doc = {"verb": verb, "exit": code, "result": payload}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.cap is not None and args.cap < 1:
        err.write("idemdim: --cap must be positive\n")
        return 2
    try:
        code, lines, payload = COMMANDS[args.verb](args)
    except InvalidSemiring as exc:
        err.write(f"idemdim: invalid semiring table:\n{exc.report}\n")
        return 2
    except (IdemdimError, UsageError, ValueError, KeyError, ArithmeticError, OSError) as exc:
        err.write(f"idemdim: {type(exc).__name__}: {exc}\n")
        return 2
    except Exception as exc:  # user input must never produce a traceback
        err.write(f"idemdim: internal error: {type(exc).__name__}: {exc}\n")
        return 2
    _emit(args, args.verb, code, lines, payload, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
