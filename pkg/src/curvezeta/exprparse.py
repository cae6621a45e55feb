"""Tiny recursive-descent parser for polynomial expressions.

Grammar: integers and rationals (`3`, `2/3`), named variables, `+ - * ^`,
and parentheses.  Multiplication must be written explicitly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import MultiPolynomial

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[-+*^()])")


class PolynomialSyntaxError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise PolynomialSyntaxError(f"bad character near {text[pos:pos+8]!r}")
        tokens.append(match.group(1))
        pos = match.end()
    tokens.append(None)
    return tokens


def parse_polynomial(text, names=("x", "y")):
    """Parse `text` into a MultiPolynomial in the given variables."""
    names = tuple(names)
    tokens = _tokenize(text)
    index = 0

    def peek():
        return tokens[index]

    def take():
        nonlocal index
        tok = tokens[index]
        index += 1
        return tok

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_power()
        while peek() == "*":
            take()
            node = node * parse_power()
        return node

    def parse_power():
        base = parse_atom()
        if peek() in ("^", "**"):
            take()
            neg = False
            if peek() == "-":
                raise PolynomialSyntaxError("negative exponents are not allowed")
            tok = take()
            if tok is None or not tok.isdigit():
                raise PolynomialSyntaxError("exponent must be a nonnegative integer")
            return base ** int(tok)
        return base

    def parse_atom():
        tok = take()
        if tok == "(":
            inner = parse_expr()
            if take() != ")":
                raise PolynomialSyntaxError("unbalanced parentheses")
            return inner
        if tok == "-":
            return -parse_power()
        if tok == "+":
            return parse_power()
        if tok is None:
            raise PolynomialSyntaxError("unexpected end of input")
        if tok[0].isdigit():
            return MultiPolynomial.constant(len(names), Fraction(tok))
        if tok in names:
            return MultiPolynomial.variable(names.index(tok), len(names))
        raise PolynomialSyntaxError(f"unknown symbol {tok!r}")

    result = parse_expr()
    if peek() is not None:
        raise PolynomialSyntaxError(f"trailing input at {peek()!r}")
    return result
