"""The expression grammar and the canonical renderer.

Grammar: variables ``z1..zn`` and ``w1..wn``, the imaginary unit ``i``,
integer literals, operators ``+ - * / ^`` (with ``^`` taking a non-negative
integer exponent), and parentheses.  Whitespace is insignificant.

Canonical output is an expanded numerator over an expanded denominator with
terms ordered lexicographically by exponent vector, descending, e.g.
``(2*z1*w1 + 1)/(z1^2*w1 + 1)``.  Every rendered expression re-parses to an
equal value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .errors import InputError
from .poly import Polynomial
from .ratfunc import RationalFunction
from .scalars import Scalar
from .series import Series

_TOKEN = re.compile(r"\s*(?:(\d+)|([zw])(\d+)|(i)|([+\-*/^()]))")


def tokenize(text: str) -> List[Tuple[str, object]]:
    tokens: List[Tuple[str, object]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise InputError(f"bad character {text[pos:].lstrip()[0]!r} in expression {text!r}")
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("var", (m.group(2), int(m.group(3)))))
        elif m.group(4) is not None:
            tokens.append(("imag", None))
        else:
            tokens.append((m.group(5), None))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, dim: int, text: str):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim
        self.text = text

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg):
        raise InputError(f"{msg} in expression {self.text!r}")

    def parse(self) -> RationalFunction:
        value = self.sum()
        if self.peek() != "end":
            self.fail(f"unexpected {self.tokens[self.pos][0]!r}")
        return value

    def sum(self) -> RationalFunction:
        value = self.product()
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            rhs = self.product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def product(self) -> RationalFunction:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op, _ = self.next()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    self.fail("division by zero")
                value = value / rhs
        return value

    def unary(self) -> RationalFunction:
        sign = 1
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            if op == "-":
                sign = -sign
        value = self.power()
        return -value if sign < 0 else value

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, k = self.next()
            if kind != "int":
                self.fail("exponent must be a non-negative integer literal")
            return base ** k
        return base

    def atom(self) -> RationalFunction:
        kind, value = self.next()
        if kind == "int":
            return RationalFunction.const(self.dim, Scalar(value))
        if kind == "imag":
            return RationalFunction.const(self.dim, Scalar(0, 1))
        if kind == "var":
            letter, index = value
            if not 1 <= index <= self.dim:
                self.fail(f"variable {letter}{index} out of range for dimension {self.dim}")
            slot = index - 1 if letter == "z" else self.dim + index - 1
            return RationalFunction.variable(self.dim, slot)
        if kind == "(":
            inner = self.sum()
            if self.peek() != ")":
                self.fail("missing closing parenthesis")
            self.next()
            return inner
        self.fail(f"unexpected token {kind!r}")


def parse(text: str, dim: int) -> RationalFunction:
    """Parse an expression in z1..z{dim}, w1..w{dim} to a RationalFunction."""
    return _Parser(tokenize(text), dim, text).parse()


# -- rendering ---------------------------------------------------------------


def _frac_str(f: Fraction) -> str:
    return str(f)


def render_scalar(c: Scalar) -> str:
    if c.is_zero():
        return "0"
    if not c.im:
        return _frac_str(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_str(c.im)}*i"
    im = c.im
    if im > 0:
        return f"{_frac_str(c.re)} + {render_scalar(Scalar(0, im))}"
    return f"{_frac_str(c.re)} - {render_scalar(Scalar(0, -im))}"


def _var_name(dim: int, slot: int) -> str:
    return f"z{slot + 1}" if slot < dim else f"w{slot - dim + 1}"


def _term_str(dim: int, exps, coef: Scalar) -> str:
    mono = "*".join(
        _var_name(dim, i) + (f"^{e}" if e > 1 else "")
        for i, e in enumerate(exps)
        if e
    )
    if not mono:
        return render_scalar(coef)
    if coef.is_one():
        return mono
    if (-coef).is_one():
        return "-" + mono
    if not coef.im or not coef.re:
        return f"{render_scalar(coef)}*{mono}"
    return f"({render_scalar(coef)})*{mono}"


def render_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = [_term_str(p.dim, e, c) for e, c in p.sorted_terms()]
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def render_ratfunc(r: RationalFunction) -> str:
    if r.den.is_one():
        return render_polynomial(r.num)
    return f"({render_polynomial(r.num)})/({render_polynomial(r.den)})"


def render_series(s: Series) -> str:
    """Human-readable series with the formal parameter rendered as ``v``.

    Not re-parseable (``v`` is not part of the grammar); JSON reports carry
    the per-order coefficient strings instead.
    """
    parts = []
    for r, c in enumerate(s.coeffs):
        if c.is_zero():
            continue
        if r == 0:
            parts.append(render_ratfunc(c))
            continue
        nu = "v" if r == 1 else f"v^{r}"
        if c.is_one():
            parts.append(nu)
        elif (-c).is_one():
            parts.append("-" + nu)
        else:
            base = render_ratfunc(c)
            if not c.den.is_one():
                parts.append(f"{base}*{nu}")
            elif len(c.num.terms) == 1:
                parts.append(f"{base}*{nu}")
            else:
                parts.append(f"({base})*{nu}")
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out
