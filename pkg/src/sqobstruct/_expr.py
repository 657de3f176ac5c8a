"""Tiny recursive-descent parser for integer polynomial expressions.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

The result maps monomials (sorted tuples of ``(name, exponent)``) to
integer coefficients.  Callers reduce coefficients to their field.
"""

from __future__ import annotations

import re
from collections import Counter

Monomial = tuple[tuple[str, int], ...]
IntPoly = dict[Monomial, int]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ExprError(ValueError):
    def __init__(self, message: str, col: int):
        super().__init__(f"{message} (column {col + 1})")
        self.col = col


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            toks.append(("int", m.group(1), col))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), col))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ExprError(f"unexpected character {ch!r}", col)
            toks.append(("op", ch, col))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    c = Counter(dict(a))
    c.update(dict(b))
    return tuple(sorted((k, v) for k, v in c.items() if v))


def poly_mul(p: IntPoly, q: IntPoly) -> IntPoly:
    out: dict[Monomial, int] = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = _mono_mul(ma, mb)
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def poly_add(p: IntPoly, q: IntPoly, sign: int = 1) -> IntPoly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + sign * c
    return {m: c for m, c in out.items() if c}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, col = self.take()
        if val != value or kind != "op":
            raise ExprError(f"expected {value!r}, found {val or 'end of input'!r}", col)

    def parse(self) -> IntPoly:
        out = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ExprError(f"unexpected {val!r}", col)
        return out

    def expr(self) -> IntPoly:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        acc = poly_add({}, self.term(), sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op, _ = self.take()
            acc = poly_add(acc, self.term(), 1 if op == "+" else -1)
        return acc

    def term(self) -> IntPoly:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = poly_mul(acc, self.factor())
        return acc

    def factor(self) -> IntPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, col = self.take()
            if kind != "int":
                raise ExprError("exponent must be a non-negative integer", col)
            out: IntPoly = {(): 1}
            for _ in range(int(val)):
                out = poly_mul(out, base)
            return out
        return base

    def atom(self) -> IntPoly:
        kind, val, col = self.take()
        if kind == "int":
            n = int(val)
            return {(): n} if n else {}
        if kind == "name":
            return {((val, 1),): 1}
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprError(f"unexpected {val or 'end of input'!r}", col)


def parse_int_poly(text: str) -> IntPoly:
    if not text.strip():
        raise ExprError("empty expression", 0)
    return _Parser(text).parse()
