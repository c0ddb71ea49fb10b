"""Recursive-descent parser for expressions in x and y.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := unary ('^' factor)?          # right-associative
    unary   := '-' unary | primary
    primary := number | 'x' | 'y' | 'pi' | 'e'
             | ident '(' expr ')' | '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt", "abs")
CONSTANTS = ("pi", "e")
VARIABLES = ("x", "y")

Span = tuple[int, int]


class ParseError(ValueError):
    """Syntax error or unknown identifier, with a 0-based character offset."""

    def __init__(self, message: str, text: str, offset: int, expected: tuple[str, ...] = (), found: str = ""):
        self.text = text
        self.offset = offset
        self.expected = expected
        self.reason = message
        detail = f"{message} at offset {offset}"
        if found:
            detail += f": unexpected {found}"
        if expected:
            detail += f" (expected one of: {', '.join(expected)})"
        super().__init__(detail)

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.offset}^"


@dataclass(frozen=True)
class Num:
    value: float
    span: Span


@dataclass(frozen=True)
class Var:
    name: str
    span: Span


@dataclass(frozen=True)
class Const:
    name: str
    span: Span


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    span: Span


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    span: Span


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"
    span: Span


Node = Union[Num, Var, Const, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'num', 'ident', 'op' or 'end'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("syntax error", text, pos, found=f"character {text[pos]!r}")
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


_PRIMARY_START = ("number", "x", "y", "pi", "e", "function", "(", "-")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _error(self, expected: tuple[str, ...]) -> ParseError:
        tok = self.tok
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        return ParseError("syntax error", self.text, tok.pos, expected, found=what)

    def _is_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self._error(("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._is_op("+", "-"):
            op = self.tok.text
            self.i += 1
            right = self.term()
            node = BinOp(op, node, right, (node.span[0], right.span[1]))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self._is_op("*", "/"):
            op = self.tok.text
            self.i += 1
            right = self.factor()
            node = BinOp(op, node, right, (node.span[0], right.span[1]))
        return node

    def factor(self) -> Node:
        base = self.unary()
        if self._is_op("^"):
            self.i += 1
            exponent = self.factor()
            return BinOp("^", base, exponent, (base.span[0], exponent.span[1]))
        return base

    def unary(self) -> Node:
        if self._is_op("-"):
            start = self.tok.pos
            self.i += 1
            operand = self.unary()
            return Neg(operand, (start, operand.span[1]))
        return self.primary()

    def primary(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text), (tok.pos, tok.pos + len(tok.text)))
        if tok.kind == "ident":
            span = (tok.pos, tok.pos + len(tok.text))
            if tok.text in VARIABLES:
                self.i += 1
                return Var(tok.text, span)
            if tok.text in CONSTANTS:
                self.i += 1
                return Const(tok.text, span)
            if tok.text in FUNCTIONS:
                self.i += 1
                if not self._is_op("("):
                    raise self._error(("(",))
                self.i += 1
                arg = self.expr()
                if not self._is_op(")"):
                    raise self._error((")",))
                end = self.tok.pos + 1
                self.i += 1
                return Call(tok.text, arg, (tok.pos, end))
            raise ParseError(f"unknown identifier {tok.text!r}", self.text, tok.pos,
                             VARIABLES + CONSTANTS + FUNCTIONS)
        if self._is_op("("):
            self.i += 1
            node = self.expr()
            if not self._is_op(")"):
                raise self._error((")",))
            self.i += 1
            return node
        raise self._error(_PRIMARY_START)


def parse(text: str) -> Node:
    """Parse ``text`` into an immutable syntax tree."""
    return _Parser(text).parse()


def to_text(node: Node) -> str:
    """Fully parenthesised source text that parses back to an equivalent tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)}{node.op}{to_text(node.right)})"
    return f"{node.func}({to_text(node.arg)})"
