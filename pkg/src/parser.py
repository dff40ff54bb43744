"""
Parser for textual q-series expressions.

Grammar (whitespace is ignored):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)?
    exponent:= ['-'] INT | '(' ['-'] INT ')'
    atom    := INT | 'q' | 'f' INT | 'phi' INT | 'psi' INT | '(' expr ')'

`a / b` means a times the inverse of b, which is defined within the
truncation whenever b has a unit constant term. `phi` and `psi` without an
index mean phi(q) and psi(q).

Design decisions:
- Fail fast with the 0-based character position of the offending token
- Produce the same QExpr trees the identity catalog builds in Python
"""

import re
from typing import List, NamedTuple, Optional

from .qexpr import (
    Generator,
    IntPower,
    IntScalar,
    Phi,
    Product,
    Psi,
    QExpr,
    QPower,
    Sum,
)


class ParseError(Exception):
    """Raised when an expression cannot be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Token(NamedTuple):
    kind: str
    text: str
    position: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<INT>\d+)|(?P<NAME>phi|psi|f|q)|(?P<OP>[-+*/^()]))"
)


def tokenize(text: str) -> List[Token]:
    """
    Split an expression into tokens.

    Raises:
        ParseError: On a character that starts no token
    """
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup or "OP"
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        pos = match.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, text: str) -> Optional[Token]:
        if self.current.kind == "OP" and self.current.text == text:
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        token = self.accept(text)
        if token is None:
            raise ParseError(f"expected {text!r}, found {self.current.text or 'end of input'!r}",
                             self.current.position)
        return token

    def parse(self) -> QExpr:
        expr = self.expr()
        if self.current.kind != "END":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.position)
        return expr

    def expr(self) -> QExpr:
        terms = [self.term()]
        while True:
            if self.accept("+"):
                terms.append(self.term())
            elif self.accept("-"):
                terms.append(Product((IntScalar(-1), self.term())))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> QExpr:
        factors = [self.unary()]
        while True:
            if self.accept("*"):
                factors.append(self.unary())
            elif self.accept("/"):
                factors.append(IntPower(self.unary(), -1))
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self) -> QExpr:
        if self.accept("-"):
            operand = self.unary()
            if isinstance(operand, IntScalar):
                return IntScalar(-operand.c)
            return Product((IntScalar(-1), operand))
        return self.power()

    def power(self) -> QExpr:
        base = self.atom()
        if not self.accept("^"):
            return base
        e = self.exponent()
        if isinstance(base, QPower) and base.e == 1 and e >= 0:
            return QPower(e)
        return IntPower(base, e)

    def exponent(self) -> int:
        wrapped = self.accept("(") is not None
        sign = -1 if self.accept("-") else 1
        token = self.current
        if token.kind != "INT":
            raise ParseError("exponent must be an integer", token.position)
        self.advance()
        if wrapped:
            self.expect(")")
        return sign * int(token.text)

    def index_after(self, name: Token, optional: bool) -> int:
        token = self.current
        if token.kind == "INT":
            self.advance()
            k = int(token.text)
            if k < 1:
                raise ParseError(f"{name.text} index must be positive", token.position)
            return k
        if optional:
            return 1
        raise ParseError(f"{name.text} needs a positive index", token.position)

    def atom(self) -> QExpr:
        token = self.current
        if token.kind == "INT":
            self.advance()
            return IntScalar(int(token.text))
        if token.kind == "NAME":
            self.advance()
            if token.text == "q":
                return QPower(1)
            if token.text == "f":
                return Generator(self.index_after(token, optional=False))
            if token.text == "phi":
                return Phi(self.index_after(token, optional=True))
            return Psi(self.index_after(token, optional=True))
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {token.text or 'end of input'!r}", token.position)


def parse_expression(text: str) -> QExpr:
    """
    Parse a textual q-series expression.

    Args:
        text: Expression such as "f2*f3/f1^2"

    Returns:
        The expression tree

    Raises:
        ParseError: With the position of the first offending token

    Example:
        >>> parse_expression("q^0*7")
        Product(factors=(QPower(e=0), IntScalar(c=7)))
    """
    if not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()
