"""Parsing of generator expressions.

Grammar:

    expression := term (('+' | '-') term)*
    term       := [coeff ('*' | implicit)] word
    coeff      := sums/products/quotients/powers of integers and symbols
    word       := [a-z]+   (the final bare factor of each term)

The symbol d stands for the loop parameter; all other identifiers used
inside coefficients are free parameters.  A generator file may carry
lines "params: a b c" and "delta: p/q" before the expression; '#' starts
a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .coeffs import COEFF_ONE, Coeff, DELTA, Poly, qnum
from .lincomb import LinComb
from .partitions import Partition


class ParseError(Exception):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|([()+\-*/^]))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not text[pos:].strip():
            break
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
        if m.end() == m.start():
            stripped = text[pos:].strip()
            if stripped:
                raise ParseError(f"unexpected character {stripped[0]!r}", pos)
            break
    return out


@dataclass
class GeneratorSpec:
    parameters: tuple
    terms: list  # (Coeff, word string)
    delta_binding: object = None

    def word_length(self):
        return len(self.terms[0][1]) if self.terms else 0

    def to_lincomb(self):
        if not self.terms:
            raise ParseError("empty generator")
        l = self.word_length()
        out = LinComb.zero(0, l)
        for c, w in self.terms:
            out = out + LinComb.of(Partition.from_word(w), c)
        return out


class _CoeffParser:
    """Recursive descent over the token list for coefficient expressions."""

    def __init__(self, tokens, symbols):
        self.tokens = tokens
        self.symbols = symbols
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return t

    def parse_expr(self):
        sign = 1
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        out = self.parse_product()
        if sign == -1:
            out = -out
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.parse_product()
                out = out + rhs if t[1] == "+" else out - rhs
            else:
                return out

    def parse_product(self):
        out = self.parse_power()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "*/":
                self.take()
                rhs = self.parse_power()
                if t[1] == "*":
                    out = out * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero")
                    out = out / rhs
            else:
                return out

    def parse_power(self):
        base = self.parse_atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise ParseError("integer exponent expected", e[2])
            return base ** e[1]
        return base

    def parse_atom(self):
        t = self.take()
        if t[0] == "int":
            return Coeff.from_q(t[1])
        if t[0] == "name":
            if t[1] != DELTA and t[1] != "delta" and t[1] not in self.symbols:
                raise ParseError(f"unknown symbol {t[1]!r}", t[2])
            return Coeff.symbol(DELTA if t[1] == "delta" else t[1])
        if t[0] == "op" and t[1] == "(":
            out = self.parse_expr()
            close = self.take()
            if close[1] != ")":
                raise ParseError("missing closing parenthesis", close[2])
            return out
        if t[0] == "op" and t[1] == "-":
            return -self.parse_atom()
        raise ParseError(f"unexpected token {t[1]!r}", t[2])


_WORD = re.compile(r"[a-z]+$")


def _split_terms(tokens):
    """Split at top-level +/- into (sign, token-slice) pieces."""
    terms = []
    depth = 0
    sign = 1
    start = 0
    i = 0
    if tokens and tokens[0][0] == "op" and tokens[0][1] in "+-":
        sign = -1 if tokens[0][1] == "-" else 1
        start = 1
        i = 1
    while i < len(tokens):
        kind, val, pos = tokens[i]
        if kind == "op":
            if val == "(":
                depth += 1
            elif val == ")":
                depth -= 1
            elif val in "+-" and depth == 0:
                terms.append((sign, tokens[start:i]))
                sign = -1 if val == "-" else 1
                start = i + 1
        i += 1
    terms.append((sign, tokens[start:]))
    return terms


def _parse_term(sign, tokens, symbols):
    if not tokens:
        raise ParseError("empty term")
    last = tokens[-1]
    if last[0] != "name" or not _WORD.match(last[1]):
        raise ParseError("term must end with a lowercase word", last[2])
    word = last[1]
    head = tokens[:-1]
    if head and head[-1][0] == "op" and head[-1][1] == "*":
        head = head[:-1]
    elif head:
        raise ParseError("coefficient and word must be joined by '*'", last[2])
    if head:
        parser = _CoeffParser(head, symbols)
        coeff = parser.parse_expr()
        if parser.i != len(head):
            t = parser.tokens[parser.i]
            raise ParseError(f"trailing tokens in coefficient: {t[1]!r}", t[2])
    else:
        coeff = COEFF_ONE
    if sign == -1:
        coeff = -coeff
    return coeff, word


def parse_expression(text, symbols=None):
    """Parse an expression into (Coeff, word) term pairs."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    if symbols is None:
        symbols = _infer_symbols(tokens)
    terms = []
    for sign, chunk in _split_terms(tokens):
        terms.append(_parse_term(sign, chunk, symbols))
    lengths = {len(w) for _, w in terms}
    if len(lengths) > 1:
        raise ParseError(f"mixed word lengths: {sorted(lengths)}")
    return terms, tuple(sorted(symbols))


def _infer_symbols(tokens):
    """Names used in coefficient position (not as the trailing word)."""
    symbols = set()
    for sign, chunk in _split_terms(tokens):
        for kind, val, _ in chunk[:-1]:
            if kind == "name" and val not in (DELTA, "delta"):
                symbols.add(val)
    return symbols


def parse_generator(text):
    """Parse a generator description (with optional header lines)."""
    params = None
    delta_binding = None
    body = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("params:"):
            params = set(line.split(":", 1)[1].split())
            continue
        if low.startswith("delta:"):
            delta_binding = parse_rational(line.split(":", 1)[1].strip())
            continue
        body.append(line)
    terms, symbols = parse_expression(" ".join(body), params)
    return GeneratorSpec(
        parameters=tuple(sorted(symbols)), terms=terms, delta_binding=delta_binding
    )


def parse_rational(text):
    """An exact rational from a 'p' or 'p/q' string."""
    text = text.strip()
    m = re.match(r"^(-?\d+)(?:/(\d+))?$", text)
    if not m:
        raise ParseError(f"not an exact rational: {text!r}")
    return qnum(int(m.group(1)), int(m.group(2) or 1))


def print_lincomb(x):
    """Inverse of parse_expression up to normalization."""
    return str(x)
