"""Tiny recursive-descent parser for integer polynomials in named variables.

Polynomials are dicts ``{exponent tuple: int}`` with zero coefficients removed.
Accepts ``+ - *``, ``^`` or ``**`` with a non-negative integer exponent,
parentheses, implicit multiplication (``3x y^2``) and unary minus.
"""
from __future__ import annotations

import re

from .errors import ClassSyntaxError

_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def _add(a, b, sign=1):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


class _P:
    def __init__(self, text, variables):
        self.text = text
        self.vars = {v: i for i, v in enumerate(variables)}
        self.n = len(variables)
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOK.match(text, pos)
            if not m:
                raise ClassSyntaxError(f"unexpected character {text[pos]!r} in polynomial", pos)
            start = m.start(m.lastindex)
            self.toks.append((m.lastindex, m.group(m.lastindex), start))
            pos = m.end()
        self.toks.append((0, None, len(text)))
        self.i = 0

    def const(self, c):
        return {(0,) * self.n: c} if c else {}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def is_op(self, tok, s):
        return tok[0] == 3 and tok[1] == s

    def parse(self):
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != 0:
            raise ClassSyntaxError(f"unexpected {val!r} in polynomial", pos)
        return out

    def expr(self):
        sign = 1
        if self.is_op(self.peek(), "-"):
            self.take()
            sign = -1
        acc = _mul(self.const(sign), self.term())
        while True:
            tok = self.peek()
            if self.is_op(tok, "+"):
                self.take()
                acc = _add(acc, self.term())
            elif self.is_op(tok, "-"):
                self.take()
                acc = _add(acc, self.term(), -1)
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            tok = self.peek()
            if self.is_op(tok, "*"):
                self.take()
                acc = _mul(acc, self.power())
            elif tok[0] in (1, 2) or self.is_op(tok, "("):
                acc = _mul(acc, self.power())
            else:
                return acc

    def power(self):
        base = self.atom()
        tok = self.peek()
        if self.is_op(tok, "^") or self.is_op(tok, "**"):
            self.take()
            kind, val, pos = self.take()
            if kind != 1:
                raise ClassSyntaxError("exponent must be a non-negative integer", pos)
            out = self.const(1)
            for _ in range(int(val)):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == 1:
            return self.const(int(val))
        if kind == 2:
            if val not in self.vars:
                raise ClassSyntaxError(f"unknown variable {val!r}", pos)
            e = [0] * self.n
            e[self.vars[val]] = 1
            return {tuple(e): 1}
        if self.is_op((kind, val, pos), "("):
            inner = self.expr()
            k2, v2, p2 = self.take()
            if not self.is_op((k2, v2, p2), ")"):
                raise ClassSyntaxError("expected ')' in polynomial", p2)
            return inner
        if self.is_op((kind, val, pos), "-"):
            return _mul(self.const(-1), self.power())
        raise ClassSyntaxError("expected a term in polynomial", pos)


def parse_poly(text: str, variables) -> dict:
    """Parse ``text`` as an integer polynomial in ``variables``."""
    return _P(text, list(variables)).parse()


def reduce_mod(poly: dict, p: int) -> dict:
    return {e: c % p for e, c in poly.items() if c % p}


def is_homogeneous(poly: dict) -> bool:
    return len({sum(e) for e in poly}) <= 1


def format_poly(poly: dict, variables) -> str:
    if not poly:
        return "0"
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        mon = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k)
        if not mon:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mon
        else:
            body = f"{abs(c)}*{mon}"
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out
