"""
Pratt parser for the function mini-language.

    expr   := expr ('+'|'-') expr | expr ('*'|'/') expr | '-' expr
            | expr '^' expr | NAME '(' expr ')' | NAME | NUMBER | '(' expr ')'

Binding powers give ^ > unary minus > * / > + -; ^ is right associative
and its right operand may start with a unary minus (2^-1).
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List

from prandtl.errors import FuncSyntaxError
from prandtl.funcdsl.expr import CONSTANTS, FUNCTIONS, Binary, Call, Const, Expr, Num, Unary, Var

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>\S))"
)

BINARY_POWER = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
UNARY_POWER = 25
VARIABLES = ("x", "y")


@dataclass(frozen=True)
class Token:
    kind: str  # number, name, op, end
    text: str
    offset: int


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if match is None or match.lastgroup is None:
            # trailing whitespace only
            break
        kind = match.lastgroup
        start = match.start(kind)
        value = match.group(kind)
        if kind == "op" and value not in "+-*/^()":
            raise FuncSyntaxError(f"unexpected character {value!r}", _byte_offset(text, start))
        yield Token(kind, value, _byte_offset(text, start))
        pos = match.end()
    yield Token("end", "", _byte_offset(text, len(text)))


class _Parser:
    def __init__(self, text: str):
        self.tokens: List[Token] = list(tokenize(text))
        self.pos = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.advance()
        if tok.text != text or tok.kind != "op":
            found = tok.text or "end of input"
            raise FuncSyntaxError(f"expected {text!r}, found {found!r}", tok.offset)

    def left_power(self, tok: Token) -> int:
        if tok.kind == "op" and tok.text in BINARY_POWER:
            return BINARY_POWER[tok.text]
        return 0

    def expression(self, rbp: int = 0) -> Expr:
        left = self.prefix(self.advance())
        while rbp < self.left_power(self.token):
            op = self.advance().text
            # right associative: bind the right operand one notch looser
            right = self.expression(BINARY_POWER[op] - 1 if op == "^" else BINARY_POWER[op])
            left = Binary(op, left, right)
        return left

    def prefix(self, tok: Token) -> Expr:
        if tok.kind == "number":
            return Num(float(tok.text))
        if tok.kind == "name":
            return self.name(tok)
        if tok.kind == "op" and tok.text == "-":
            return Unary("-", self.expression(UNARY_POWER))
        if tok.kind == "op" and tok.text == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        found = tok.text or "end of input"
        raise FuncSyntaxError(f"unexpected {found!r}", tok.offset)

    def name(self, tok: Token) -> Expr:
        if tok.text in VARIABLES:
            return Var(tok.text)
        if tok.text in CONSTANTS:
            return Const(tok.text)
        if tok.text in FUNCTIONS:
            self.expect("(")
            arg = self.expression()
            self.expect(")")
            return Call(tok.text, arg)
        raise FuncSyntaxError(f"unknown identifier {tok.text!r}", tok.offset)


@lru_cache(maxsize=256)
def parse(text: str) -> Expr:
    if not text or not text.strip():
        raise FuncSyntaxError("empty expression", 0)
    parser = _Parser(text)
    tree = parser.expression()
    if parser.token.kind != "end":
        raise FuncSyntaxError(f"unexpected {parser.token.text!r}", parser.token.offset)
    return tree
