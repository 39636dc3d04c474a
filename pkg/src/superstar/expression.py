"""Text form of super-polynomials.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' NAT)?
    atom   := RATIONAL | 'h' | VAR | '(' expr ')' | '-' atom
    VAR    := ('p' | 'q' | 't' | 'x') NAT

``t<i>`` is theta_i, ``x<i>`` the auxiliary Grassmann parameter xi_i and ``h``
is hbar.  Division is only by nonzero rational constants.
"""
from __future__ import annotations

import re
import warnings
from fractions import Fraction
from typing import List, Tuple

from .graded import THETA, Monomial, Signature, SuperPolynomial, Variable

__all__ = ["ExpressionError", "OddPowerWarning", "parse_expression", "format_expression", "format_monomial"]


class ExpressionError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class OddPowerWarning(UserWarning):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([pqtx])(\d+)|(h)|([-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            try:
                tokens.append(("var", Variable(m.group(2), int(m.group(3))), start))
            except ValueError as exc:
                raise ExpressionError(str(exc), start) from None
        elif m.group(4):
            tokens.append(("h", None, start))
        else:
            tokens.append((m.group(5), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ExpressionError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> SuperPolynomial:
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionError(f"unexpected token {tok[0]!r}", tok[2])
        return out

    def expr(self):
        out = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                out = out * rhs
            else:
                if not rhs or any(m.degree or m.hbar for m in rhs.terms):
                    raise ExpressionError("division by a non-constant or zero", pos)
                out = out.scale(1 / rhs.constant_term())
        return out

    def factor(self):
        start = self.peek()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            _, k, _ = self.take("int")
            if start[0] == "var" and start[1].is_odd and k >= 2:
                warnings.warn(f"odd variable {start[1]} raised to power {k} is zero", OddPowerWarning, stacklevel=4)
            base = base ** k
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            if self.peek()[0] == "/" and self.tokens[self.i + 1][0] == "int":
                self.take()
                _, den, dpos = self.take("int")
                if den == 0:
                    raise ExpressionError("zero denominator", dpos)
                return SuperPolynomial.constant(self.sig, Fraction(val, den))
            return SuperPolynomial.constant(self.sig, val)
        if kind == "h":
            return SuperPolynomial.hbar(self.sig)
        if kind == "var":
            try:
                return SuperPolynomial.var(self.sig, val)
            except ValueError as exc:
                raise ExpressionError(str(exc), pos) from None
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            return -self.atom()
        raise ExpressionError(f"unexpected token {kind!r}", pos)


def parse_expression(text: str, sig: Signature) -> SuperPolynomial:
    """Parse ``text`` into a canonical :class:`SuperPolynomial` over ``sig``."""
    return _Parser(text, sig).parse()


def _factors(m: Monomial, n: int):
    """Variable names of a monomial in canonical order, as ``(sort_key, text)``."""
    out = []
    for slot, e in enumerate(m.evens):
        if not e:
            continue
        name = f"p{slot + 1}" if slot < n else f"q{slot - n + 1}"
        out.append(((0, slot), name if e == 1 else f"{name}^{e}"))
    for kind, idx in m.odds:
        out.append(((1 + kind, idx), f"t{idx}" if kind == THETA else f"x{idx}"))
    return out


def format_monomial(m: Monomial, n: int) -> str:
    parts = []
    if m.hbar:
        parts.append("h" if m.hbar == 1 else f"h^{m.hbar}")
    parts += [txt for _, txt in _factors(m, n)]
    return "*".join(parts)


def _sort_key(m: Monomial, n: int):
    expanded = []
    for slot, e in enumerate(m.evens):
        expanded += [(0, slot)] * e
    expanded += [(1 + kind, idx) for kind, idx in m.odds]
    return (m.hbar, m.degree, tuple(expanded))


def format_expression(f: SuperPolynomial) -> str:
    """Deterministic canonical text, terms ordered by (hbar power, degree, lex)."""
    if not f.terms:
        return "0"
    n = f.sig.n
    out = []
    for m in sorted(f.terms, key=lambda m: _sort_key(m, n)):
        c = f.terms[m]
        body = format_monomial(m, n)
        if not body:
            out.append(str(c))
        elif c == 1:
            out.append(body)
        else:
            out.append(f"{c}*{body}")
    return " + ".join(out)
