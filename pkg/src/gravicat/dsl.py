"""A small language for gluing diagrams.

Grammar::

    expr  := union
    union := comp { "+" comp }
    comp  := atom { "*" atom }
    atom  := NAME | "rev" "(" expr ")" | "(" expr ")"

``A * B`` glues A's outgoing boundary to B's incoming boundary, ``A + B`` is
the disjoint union and ``rev(A)`` reverses orientation. ``rev`` is reserved.
"""

from __future__ import annotations

import re
import typing
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .cobordism import CobordismRecord, compose, disjoint_union, empty_record, reverse_morphism
from .errors import ExpressionSyntaxError, GravicatError, UnboundName

Pos = tuple[int, int]


@dataclass(frozen=True)
class Name:
    name: str
    pos: Pos = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Compose:
    left: Expression
    right: Expression
    pos: Pos = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Union:
    left: Expression
    right: Expression
    pos: Pos = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Rev:
    inner: Expression
    pos: Pos = field(default=(1, 1), compare=False, repr=False)


Expression = typing.Union[Name, Compose, Union, Rev]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[*+()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "op" or "end"
    text: str
    line: int
    column: int


def tokenize(src: str) -> Iterator[Token]:
    line_starts = [0] + [i + 1 for i, ch in enumerate(src) if ch == "\n"]

    def where(offset: int) -> Pos:
        line = max(i for i, start in enumerate(line_starts) if start <= offset)
        return line + 1, offset - line_starts[line] + 1

    i = 0
    while True:
        while i < len(src) and src[i].isspace():
            i += 1
        if i == len(src):
            line, col = where(i)
            yield Token("end", "", line, col)
            return
        m = _TOKEN.match(src, i)
        if not m or m.start(m.lastgroup) != i:
            line, col = where(i)
            raise ExpressionSyntaxError(f"unexpected character {src[i]!r}", line, col, src[i])
        line, col = where(i)
        yield Token(m.lastgroup, m.group(m.lastgroup), line, col)
        i = m.end()


class _Parser:
    def __init__(self, src: str):
        self.tokens = list(tokenize(src))
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, expected: str):
        t = self.tok
        shown = t.text or "end of input"
        raise ExpressionSyntaxError(
            f"expected {expected}, found {shown!r} at line {t.line}, column {t.column}",
            t.line, t.column, t.text,
        )

    def expect(self, text: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        self.error(repr(text))

    def parse(self) -> Expression:
        expr = self.union()
        if self.tok.kind != "end":
            self.error("an operator or end of input")
        return expr

    def union(self) -> Expression:
        left = self.comp()
        while self.tok.kind == "op" and self.tok.text == "+":
            op = self.advance()
            left = Union(left, self.comp(), (op.line, op.column))
        return left

    def comp(self) -> Expression:
        left = self.atom()
        while self.tok.kind == "op" and self.tok.text == "*":
            op = self.advance()
            left = Compose(left, self.atom(), (op.line, op.column))
        return left

    def atom(self) -> Expression:
        t = self.tok
        if t.kind == "name" and t.text == "rev":
            self.advance()
            self.expect("(")
            inner = self.union()
            self.expect(")")
            return Rev(inner, (t.line, t.column))
        if t.kind == "name":
            self.advance()
            return Name(t.text, (t.line, t.column))
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.union()
            self.expect(")")
            return inner
        self.error("a name, 'rev(' or '('")


def parse(src: str) -> Expression:
    return _Parser(src).parse()


def pretty(expr: Expression) -> str:
    """Render with the fewest parentheses that parse back to the same tree."""
    if isinstance(expr, Name):
        return expr.name
    if isinstance(expr, Rev):
        return f"rev({pretty(expr.inner)})"
    if isinstance(expr, Union):
        right = pretty(expr.right)
        if isinstance(expr.right, Union):
            right = f"({right})"
        return f"{pretty(expr.left)} + {right}"
    left, right = pretty(expr.left), pretty(expr.right)
    if isinstance(expr.left, Union):
        left = f"({left})"
    if isinstance(expr.right, (Union, Compose)):
        right = f"({right})"
    return f"{left} * {right}"


EMPTY_NAME = "Empty"


def evaluate(expr: Expression, records: Mapping[str, CobordismRecord]) -> CobordismRecord:
    """Evaluate bottom-up; ``Empty`` is predefined unless the manifest defines it.

    Errors raised by the gluing operations keep their type and gain the
    position of the offending node.
    """
    if isinstance(expr, Name):
        if expr.name in records:
            return records[expr.name]
        if expr.name == EMPTY_NAME:
            return empty_record()
        err = UnboundName(f"no cobordism named {expr.name!r}", name=expr.name)
        err.position = expr.pos
        raise err
    try:
        if isinstance(expr, Rev):
            return reverse_morphism(evaluate(expr.inner, records))
        left = evaluate(expr.left, records)
        right = evaluate(expr.right, records)
        if isinstance(expr, Compose):
            return compose(left, right)
        return disjoint_union(left, right)
    except GravicatError as exc:
        if exc.position is None:
            exc.position = expr.pos
        raise
