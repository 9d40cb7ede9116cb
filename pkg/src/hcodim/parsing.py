"""Recursive-descent parser for H-polynomials.

Grammar (whitespace is ignored)::

    sum      := term (('+' | '-') term)*
    term     := ['-'] [rational '*'] factor
    factor   := atom | atom '*' atom
    atom     := var | '(' sum ')' | '[' sum ',' sum ']'
    var      := 'x' digits [ '^h' digits | '^(' label ')' ]
    rational := digits ['/' digits]

``[p, q]`` expands to ``p*q - q*p``.  A product of three factors without
parentheses is rejected: bracketing is part of a nonassociative monomial.
Variables are 1-based (``x1``); ``^hj`` names the H-basis element with
0-based index ``j``; ``^(label)`` names a grade label, or an H-basis label
when the alphabet is an H-action.
"""
from __future__ import annotations


from .exactlin import Q
from .freealg import Alphabet, Grade, HBasis, HPolynomial, commutator


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}" + (f": {text[:pos]}<-- HERE" if text else ""))


class UnknownDecoration(ParseError):
    pass


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text.replace("−", "-")
        self.alphabet = alphabet
        self.pos = 0

    def error(self, msg, cls=ParseError, pos=None):
        raise cls(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def digits(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected digits")
        return int(self.text[start:self.pos])

    def parse(self) -> HPolynomial:
        result = self.sum()
        if self.peek():
            if self.peek() == "*":
                self.error("ambiguous bracketing: products of three or more factors need parentheses")
            self.error(f"unexpected {self.peek()!r}")
        return result

    def sum(self) -> HPolynomial:
        acc = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> HPolynomial:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        coeff = Q(sign)
        if self.peek().isdigit():
            num = self.digits()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.digits()
                if den == 0:
                    self.error("zero denominator")
            coeff *= Q(num, den)
            self.expect("*")
        return self.factor() * coeff

    def factor(self) -> HPolynomial:
        left = self.atom()
        if self.peek() == "*":
            self.pos += 1
            right = self.atom()
            if self.peek() == "*":
                self.error("ambiguous bracketing: products of three or more factors need parentheses")
            return left * right
        return left

    def atom(self) -> HPolynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.sum()
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            p = self.sum()
            self.expect(",")
            q = self.sum()
            self.expect("]")
            return commutator(p, q)
        if ch == "x":
            return self.var()
        self.error("expected a variable, '(' or '['" if ch else "unexpected end of input")

    def var(self) -> HPolynomial:
        self.pos += 1  # 'x'
        if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
            self.error("expected variable index after 'x'")
        i = self.digits()
        if i < 1:
            self.error("variables are numbered from x1", pos=self.pos - 1)
        dec = None
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            start = self.pos
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos] == "h":
                self.pos += 1
                j = self.digits()
                dec = self.h_index(j, start)
            elif self.pos < len(self.text) and self.text[self.pos] == "(":
                self.pos += 1
                close = self.text.find(")", self.pos)
                if close < 0:
                    self.error("unterminated decoration label")
                label = self.text[self.pos:close].strip()
                self.pos = close + 1
                dec = self.label(label, start)
            else:
                self.error("expected '^h<digits>' or '^(<label>)'")
        return HPolynomial.var(i, dec)

    def h_index(self, j: int, start: int):
        if self.alphabet.kind != "h":
            self.error(f"'^h{j}' needs an H-action", UnknownDecoration, start)
        if j >= len(self.alphabet.labels):
            self.error(f"H-basis index {j} out of range", UnknownDecoration, start)
        return HBasis(j)

    def label(self, label: str, start: int):
        kind = self.alphabet.kind
        if kind is None:
            self.error(f"decoration ({label}) used but the algebra has no grading or action", UnknownDecoration, start)
        if label not in self.alphabet.labels:
            self.error(
                f"unknown decoration label {label!r}; known: {list(self.alphabet.labels)}", UnknownDecoration, start,
            )
        idx = self.alphabet.labels.index(label)
        return Grade(idx) if kind == "grade" else HBasis(idx)


def parse_polynomial(text: str, alphabet: Alphabet = Alphabet()) -> HPolynomial:
    """Parse ``text`` into an HPolynomial over the given decoration alphabet."""
    return _Parser(text, alphabet).parse()
