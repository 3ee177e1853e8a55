"""Polynomial input: coefficient lists and infix expressions in ``x``.

Accepted forms::

    1, -2.5, 3            ascending coefficients (commas or whitespace)
    (x - 1)^2 * (x + 2i)  expression with + - * ^ ( ), implicit products
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import List, Tuple, Union

from .poly import Polynomial, parse_coefficients

__all__ = ["PolynomialSyntaxError", "parse_polynomial", "format_expression", "load_polynomial"]


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offending column."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1}\n  {text}\n  {' ' * pos}^")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[ij]?)
  | (?P<imag>[ij](?![A-Za-z]))
  | (?P<var>x)
  | (?P<op>[-+*^()])
""", re.VERBOSE)

# a bare list of numbers; anything else goes to the expression parser
_COEFF_LIST = re.compile(r"^[\s,;\[\]]*[-+0-9.eEij\s,;\[\]]*$")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := factor (['*'] factor)*
    # factor := ('+'|'-') factor | atom ['^' integer]
    # atom   := number | 'i' | 'x' | '(' expr ')'

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

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PolynomialSyntaxError(msg, self.text, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty polynomial")
        poly = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return poly

    def expr(self) -> Polynomial:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "imag", "var") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.factor()
            return inner * -1.0 if val == "-" else inner
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                raise self.error("exponent must be a nonnegative integer", tok)
            k = int(tok[1])
            out = Polynomial([1.0])
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = tok = self.take()
        if kind == "num":
            if val[-1] in "ij":
                return Polynomial.trimmed([complex(0.0, float(val[:-1]))])
            return Polynomial.trimmed([float(val)])
        if kind == "imag":
            return Polynomial([1j])
        if kind == "var":
            return Polynomial([0.0, 1.0])
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                raise self.error("missing ')'")
            self.take()
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {val!r}", tok)


def parse_polynomial(text: str) -> Polynomial:
    """Parse a coefficient list or an expression in ``x``."""
    s = text.strip()
    if not s:
        raise PolynomialSyntaxError("empty polynomial", text, 0)
    if "x" not in s and _COEFF_LIST.match(s) and re.search(r"[\s,;]", s.strip("[] ")):
        try:
            return parse_coefficients(re.sub(r"[\[\],;]", " ", s))
        except ValueError:
            pass
    return _Parser(text).parse()


def _fmt_coeff(c) -> str:
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}i"
    return f"({c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}i)"


def format_expression(poly: Polynomial) -> str:
    """Expression text that :func:`parse_polynomial` maps back to ``poly`` exactly."""
    if poly.is_zero:
        return "0"
    terms = []
    for k, c in enumerate(poly.coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("*x" if k == 1 else f"*x^{k}")
        terms.append(_fmt_coeff(c) + mono)
    return " + ".join(terms)


def load_polynomial(arg: Union[str, Path]) -> Polynomial:
    """``arg`` names a file holding polynomial text, or is the text itself."""
    path = Path(str(arg))
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if is_file:
        return parse_polynomial(path.read_text())
    return parse_polynomial(str(arg))

