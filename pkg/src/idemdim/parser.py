"""The expression language shared by the CLI and the tests.

Precedence is ``^`` over ``*`` over ``+``; parentheses group, ``(e1, e2)``
is a pair, and in a fraction ring ``num / den`` (with spaces) is a
fraction.  ``p/q`` written without spaces is a rational literal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .congruences import (
    Congruence,
    EvalPullback,
    Improper,
    Pair,
    Trivial,
    closure_finite,
)
from .errors import BaseError, ExpressionSyntaxError, IdemdimError, ModeError, UnsupportedQuery
from .polynomials import Poly, PolyRing
from .scalars import BOOL, INTMAX, RATMAX, Base, FiniteSemiring, LexMonomials, Scalar

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<quoted>'(?:[^'\\]|\\.)*')
  | (?P<op>[-+*^/(),;\[\]=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind != "ws":
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tail = src.rstrip()
    last_nl = tail.rfind("\n")
    out.append(Token("eof", "", tail.count("\n") + 1, len(tail) - last_nl))
    return out


# ---------------------------------------------------------------------------
# ring specs


def parse_ring_spec(spec: str, table: FiniteSemiring | None = None):
    """``base[,poly|laurent|frac[,n]]`` to a ring object.

    ``base`` is b, zmax, qmax, mon<k>, lex<k>, nmon<k>, nlex<k>, table (the
    ``--table`` semiring) or the name of a bundled corpus table.
    """
    from .harness import resolve_base
    from .semifields import FractionRing

    parts = [p.strip() for p in spec.split(",")]
    if not parts[0]:
        raise ValueError("empty ring spec")
    if parts[0].lower() == "table":
        if table is None:
            raise ValueError("ring base 'table' needs --table")
        base: Base = table
    else:
        base = resolve_base(parts[0])
    if len(parts) == 1:
        return base
    kind = parts[1].lower()
    if kind == "frac":
        if len(parts) > 2:
            raise ValueError("a fraction ring takes no variable count")
        return FractionRing(base)
    if kind not in ("poly", "laurent"):
        raise ValueError(f"ring kind must be poly, laurent or frac, not {parts[1]!r}")
    n = 1
    if len(parts) > 2:
        if not parts[2].isdigit() or int(parts[2]) < 1:
            raise ValueError(f"bad variable count {parts[2]!r}")
        n = int(parts[2])
    if len(parts) > 3:
        raise ValueError(f"too many fields in ring spec {spec!r}")
    return PolyRing(base, n, kind == "laurent")


def scalar_base(ring) -> Base:
    from .semifields import FractionRing

    if isinstance(ring, (PolyRing, FractionRing)):
        return ring.base
    return ring


# ---------------------------------------------------------------------------
# expressions


class _Parser:
    def __init__(self, src: str, ring):
        from .semifields import FractionRing

        if not src.strip():
            raise ExpressionSyntaxError("empty input", 1, 1)
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.ring = ring
        self.frac_ring = ring if isinstance(ring, FractionRing) else None
        # arithmetic happens in the polynomial ring, or in the scalar base
        self.calc = ring.base if self.frac_ring is not None else ring
        self.base = scalar_base(ring)

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ExpressionSyntaxError(f"{msg}, found {found}", tok.line, tok.column)

    def accept(self, text: str) -> Token | None:
        if self.tok.kind == "op" and self.tok.text == text:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            self.error(f"expected {text!r}")
        return t

    def accept_ident(self, name: str) -> bool:
        if self.tok.kind == "ident" and self.tok.text == name:
            self.i += 1
            return True
        return False

    def finish(self):
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")

    # grammar
    def element(self):
        """expr, or num / den in a fraction ring."""
        value = self.expr()
        if self.frac_ring is not None:
            if self.accept("/"):
                den = self.expr()
                return self.frac_ring.frac(value, den)
            return self.frac_ring.embed(value)
        return value

    def element_or_pair(self):
        start = self.i
        if self.accept("("):
            first = self.element()
            if self.accept(","):
                second = self.element()
                self.expect(")")
                if self.tok.kind == "op" and self.tok.text in "+*^":
                    self.error("a pair cannot be an operand")
                return Pair(first, second)
            self.i = start
        return self.element()

    def expr(self):
        value = self.term()
        while self.accept("+"):
            value = value + self.term()
        return value

    def term(self):
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self):
        value = self.atom()
        if self.accept("^"):
            neg = self.accept("-") is not None
            t = self.tok
            if t.kind != "num" or "/" in t.text:
                self.error("expected an integer exponent")
            self.i += 1
            n = -int(t.text) if neg else int(t.text)
            value = self._power(value, n, t)
        return value

    def _power(self, value, n: int, tok: Token):
        if n >= 0:
            return value**n
        if isinstance(value, Poly):
            if not value.ring.laurent:
                raise ModeError(f"negative exponent outside Laurent mode (column {tok.column})")
            if not value.is_monomial():
                raise ModeError(f"only monomials have inverses (column {tok.column})")
        try:
            return value**n
        except (ArithmeticError, ValueError) as exc:
            raise ModeError(f"{exc} (column {tok.column})") from None

    def atom(self):
        t = self.tok
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "op" and t.text == "-":
            self.i += 1
            nt = self.tok
            if nt.kind == "num":
                self.i += 1
                return self.lift(self.numeric("-" + nt.text, nt))
            if nt.kind == "ident" and nt.text == "inf":
                self.i += 1
                return self.lift(self.bottom(nt))
            self.error("expected a number or inf after '-'")
        if t.kind == "num":
            self.i += 1
            return self.lift(self.numeric(t.text, t))
        if t.kind == "quoted":
            self.i += 1
            label = t.text[1:-1].encode().decode("unicode_escape")
            return self.lift(self.label(label, t))
        if t.kind == "ident":
            self.i += 1
            return self.identifier(t)
        self.error("expected an expression")

    # leaves
    def lift(self, s: Scalar):
        if isinstance(self.calc, PolyRing):
            return self.calc.const(s)
        return s

    def bottom(self, tok: Token) -> Scalar:
        if self.base in (INTMAX, RATMAX):
            return self.base.zero
        raise BaseError(f"-inf is not an element of {self.base.name} (column {tok.column})")

    def numeric(self, text: str, tok: Token) -> Scalar:
        B = self.base
        if isinstance(B, FiniteSemiring):
            return self.label(text, tok)
        if B == BOOL and text in ("0", "1"):
            return BOOL.scalar(text == "1")
        if isinstance(B, LexMonomials) and text in ("0", "1"):
            return B.zero if text == "0" else B.one
        if B == INTMAX and "/" not in text:
            return INTMAX.scalar(int(text))
        if B == RATMAX:
            return RATMAX.scalar(Fraction(text))
        raise BaseError(f"{text} is not an element of {B.name} (column {tok.column})")

    def label(self, label: str, tok: Token) -> Scalar:
        B = self.base
        if isinstance(B, FiniteSemiring) and label in B.carrier:
            return B.element(label)
        raise BaseError(f"{label!r} is not an element of {B.name} (column {tok.column})")

    def identifier(self, t: Token):
        name = t.text
        B = self.base
        if name == "one":
            return self.lift(B.one)
        if name == "zero":
            return self.lift(B.zero)
        calc = self.calc
        if isinstance(calc, PolyRing):
            try:
                return calc.var(name)
            except KeyError:
                pass
        if B == BOOL and name in ("b0", "b1"):
            return self.lift(BOOL.scalar(name == "b1"))
        if isinstance(B, LexMonomials) and name in B.generator_names():
            return self.lift(B.generator(B.generator_names().index(name)))
        if isinstance(B, FiniteSemiring) and name in B.carrier:
            return self.lift(B.element(name))
        if name == "inf":
            self.error("inf needs a leading '-'", t)
        raise ExpressionSyntaxError(f"unknown name {name!r} in {getattr(self.ring, 'name', self.ring)}", t.line, t.column)


def parse_expression(src: str, ring) -> Any:
    """A ring element, a fraction or a pair."""
    p = _Parser(src, ring)
    value = p.element_or_pair()
    p.finish()
    return value


def parse_element(src: str, ring) -> Any:
    p = _Parser(src, ring)
    value = p.element()
    p.finish()
    return value


def parse_pair(src: str, ring) -> Pair:
    value = parse_expression(src, ring)
    if not isinstance(value, Pair):
        raise ExpressionSyntaxError("expected a pair (e1, e2)", 1, 1)
    return value


# ---------------------------------------------------------------------------
# congruence literals


def _split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside brackets and parentheses."""
    depth, start, out = 0, 0, []
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return out


_LITERAL = re.compile(r"^\s*([a-z]+)\s*(?:([\[(])(.*)([\])]))?\s*$", re.S)


def parse_congruence(src: str, ring, cap: int | None = None) -> Congruence:
    from .harness import base_chain
    from .primes import make_intersect_qc, make_lifted_prime, make_weight_prime
    from .semifields import FracExtension, FractionRing, MonomialZeroing, Principal

    m = _LITERAL.match(src)
    if not m:
        raise ExpressionSyntaxError(f"malformed congruence literal {src!r}", 1, 1)
    head, open_, body, close = m.groups()
    if open_ and {"(": ")", "[": "]"}[open_] != close:
        raise ExpressionSyntaxError("mismatched brackets", 1, len(src.rstrip()))
    body = body or ""

    def need_body():
        if open_ is None:
            raise ExpressionSyntaxError(f"{head} needs arguments", 1, len(src.rstrip()) + 1)

    if head in ("trivial", "improper"):
        if open_:
            raise ExpressionSyntaxError(f"{head} takes no arguments", 1, src.index(open_) + 1)
        return Trivial(ring) if head == "trivial" else Improper(ring)
    need_body()
    if head == "gen":
        if not isinstance(ring, FiniteSemiring):
            raise UnsupportedQuery("gen[...] needs a finite carrier")
        pairs = [parse_pair(p, ring) for p in _split_top(body, ";") if p.strip()]
        return closure_finite(ring, pairs)
    if head == "weight":
        if not isinstance(ring, PolyRing):
            raise UnsupportedQuery("weight[...] needs a polynomial ring")
        rows = []
        for row in _split_top(body, ";"):
            row = row.strip()
            if not (row.startswith("[") and row.endswith("]")):
                raise ExpressionSyntaxError(f"weight rows look like [q1,q2], got {row!r}", 1, 1)
            try:
                rows.append([Fraction(q.strip()) for q in row[1:-1].split(",")])
            except ValueError:
                raise ExpressionSyntaxError(f"bad rational in weight row {row!r}", 1, 1) from None
        return make_weight_prime(rows, ring)
    if head == "lift":
        if not isinstance(ring, PolyRing):
            raise UnsupportedQuery("lift(...) needs a one-variable polynomial ring")
        bc = base_chain(ring.base, cap)
        arg = body.strip()
        if arg == "top":
            return make_lifted_prime(bc, bc.dim, True, ring)
        if not arg.isdigit():
            raise ExpressionSyntaxError(f"lift takes an index or top, not {arg!r}", 1, 1)
        return make_lifted_prime(bc, int(arg), False, ring)
    if head == "evalpull":
        parts = _split_top(body, ";")
        if len(parts) != 2:
            raise ExpressionSyntaxError("evalpull(assignments; inner)", 1, 1)
        assign = {}
        for item in _split_top(parts[0], ","):
            if "=" not in item:
                raise ExpressionSyntaxError(f"assignment {item.strip()!r} needs '='", 1, 1)
            name, value = (s.strip() for s in item.split("=", 1))
            assign[name] = parse_element(value, scalar_base(ring))
        if isinstance(ring, LexMonomials):
            names = ring.generator_names()
            if any(not v.is_zero for v in assign.values()):
                raise UnsupportedQuery("generators of a monomial domain can only be sent to 0")
            idx = sorted(names.index(k) for k in assign)
            if idx != list(range(len(idx))):
                raise UnsupportedQuery("only a leading run of generators can be sent to 0")
            inner = parse_congruence(parts[1], ring, cap)
            if not isinstance(inner, Trivial):
                raise UnsupportedQuery("zeroing pullbacks take the trivial inner congruence")
            return MonomialZeroing(ring, len(idx))
        if not isinstance(ring, PolyRing):
            raise UnsupportedQuery("evalpull needs a polynomial ring")
        try:
            keys = {ring.var_index(k) for k in assign}
        except KeyError as exc:
            raise ExpressionSyntaxError(f"unknown variable {exc}", 1, 1) from None
        target = ring.base if len(keys) == ring.nvars else ring
        inner = parse_congruence(parts[1], target, cap)
        return EvalPullback(ring, assign, inner)
    if head == "principal":
        return Principal(ring, parse_element(body, ring))
    if head == "fracext":
        if not isinstance(ring, FractionRing):
            raise UnsupportedQuery("fracext(...) needs a fraction ring")
        return FracExtension(parse_congruence(body, ring.base, cap))
    if head == "iqc":
        if not isinstance(ring, PolyRing):
            raise UnsupportedQuery("iqc(n) needs B[x,y] or B(x,y)")
        if not body.strip().isdigit():
            raise ExpressionSyntaxError(f"iqc takes a positive integer, not {body.strip()!r}", 1, 1)
        return make_intersect_qc(int(body), ring)
    raise ExpressionSyntaxError(f"unknown congruence family {head!r}", 1, 1)


def format_value(value) -> str:
    return str(value)


__all__ = [
    "IdemdimError",
    "Token",
    "format_value",
    "parse_congruence",
    "parse_element",
    "parse_expression",
    "parse_pair",
    "parse_ring_spec",
    "scalar_base",
    "tokenize",
]
