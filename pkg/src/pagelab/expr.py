"""Coefficient expressions: a tiny recursive-descent parser evaluated over jets.

Grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := unary ('^' factor)?          # right-associative
    unary   := '-' unary | primary
    primary := number | ident | ident '(' expr ')' | '(' expr ')'

Identifiers are the variable ``t``, a named constant, or one of the
functions ``sqrt``, ``sin``, ``cos``.  ``pi`` is always available.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .jets import Jet2, JetDomainError, const

__all__ = [
    "Num",
    "Var",
    "Const",
    "Neg",
    "BinOp",
    "Call",
    "Expr",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "ExprDomainError",
    "FUNCTIONS",
    "parse_expression",
    "eval_expr",
    "to_text",
    "free_constants",
]

FUNCTIONS = ("sqrt", "sin", "cos")
PREDECLARED = {"pi": math.pi}

Span = tuple[int, int]


@dataclass(frozen=True)
class Num:
    value: float
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Const:
    name: str
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


Expr = Union[Num, Var, Const, Neg, BinOp, Call]


class ExprSyntaxError(ValueError):
    def __init__(self, text: str, offset: int, expected: set[str]):
        self.text = text
        self.offset = offset
        self.expected = frozenset(expected)
        found = repr(text[offset]) if offset < len(text) else "end of input"
        super().__init__(
            f"syntax error at offset {offset}: found {found}, expected one of {sorted(self.expected)}"
        )


class UnknownIdentifierError(ValueError):
    def __init__(self, name: str, span: Span):
        self.name = name
        self.span = span
        super().__init__(f"unknown identifier {name!r} at offset {span[0]}")


class ExprDomainError(ValueError):
    def __init__(self, cause: JetDomainError, span: Span, source: Optional[str] = None):
        self.cause = cause
        self.span = span
        where = f" in {source[span[0]:span[1]]!r}" if source else ""
        super().__init__(f"{cause}{where} (offsets {span[0]}..{span[1]})")


_NUMBER = re.compile(rb"[0-9]+(\.[0-9]*)?([eE][+-]?[0-9]+)?")
_IDENT = re.compile(rb"[A-Za-z_][A-Za-z0-9_]*")
_WS = re.compile(rb"[ \t\r\n]*")


class _Parser:
    # works on UTF-8 bytes so that reported offsets are byte offsets

    def __init__(self, text: str, constants: Optional[set[str]]):
        self.text = text
        self.src = text.encode("utf-8")
        self.pos = 0
        self.constants = constants

    def _skip(self) -> None:
        self.pos = _WS.match(self.src, self.pos).end()

    def _peek(self) -> bytes:
        self._skip()
        return self.src[self.pos : self.pos + 1]

    def _fail(self, expected: set[str]):
        self._skip()
        raise ExprSyntaxError(self.text, self.pos, expected)

    def parse(self) -> Expr:
        node = self.expr()
        if self._peek():
            self._fail({"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._peek() in (b"+", b"-"):
            op = self.src[self.pos : self.pos + 1].decode()
            self.pos += 1
            rhs = self.term()
            node = BinOp(op, node, rhs, (node.span[0], rhs.span[1]))
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self._peek() in (b"*", b"/"):
            op = self.src[self.pos : self.pos + 1].decode()
            self.pos += 1
            rhs = self.factor()
            node = BinOp(op, node, rhs, (node.span[0], rhs.span[1]))
        return node

    def factor(self) -> Expr:
        base = self.unary()
        if self._peek() == b"^":
            self.pos += 1
            expo = self.factor()
            return BinOp("^", base, expo, (base.span[0], expo.span[1]))
        return base

    def unary(self) -> Expr:
        if self._peek() == b"-":
            start = self.pos
            self.pos += 1
            inner = self.unary()
            return Neg(inner, (start, inner.span[1]))
        return self.primary()

    def primary(self) -> Expr:
        c = self._peek()
        start = self.pos
        if c == b"(":
            self.pos += 1
            inner = self.expr()
            self._expect(b")")
            return inner
        m = _NUMBER.match(self.src, self.pos)
        if m:
            self.pos = m.end()
            return Num(float(m.group().decode()), (start, self.pos))
        m = _IDENT.match(self.src, self.pos)
        if m:
            name = m.group().decode()
            self.pos = m.end()
            if name in FUNCTIONS:
                self._expect(b"(")
                arg = self.expr()
                self._expect(b")")
                return Call(name, arg, (start, self.pos))
            span = (start, self.pos)
            if name == "t":
                return Var(span)
            if self.constants is not None and name not in self.constants and name not in PREDECLARED:
                raise UnknownIdentifierError(name, span)
            return Const(name, span)
        self._fail({"number", "identifier", "(", "-"})

    def _expect(self, tok: bytes) -> None:
        if self._peek() != tok:
            self._fail({tok.decode()})
        self.pos += 1


def parse_expression(text: str, constants: Optional[set[str]] = None) -> Expr:
    """Parse ``text`` into an expression tree.

    When ``constants`` is given, identifiers outside ``{t, pi} ∪ constants``
    and the function names are rejected at parse time; otherwise they are
    resolved when the expression is evaluated.
    """
    return _Parser(text, None if constants is None else set(constants)).parse()


def eval_expr(
    e: Expr,
    t: Union[Jet2, float],
    constants: Optional[Mapping[str, float]] = None,
    source: Optional[str] = None,
) -> Jet2:
    """Evaluate ``e`` at ``t``; returns value and two t-derivatives."""
    if not isinstance(t, Jet2):
        t = Jet2(float(t), 1.0, 0.0)
    env = dict(PREDECLARED)
    if constants:
        env.update(constants)
    return _eval(e, t, env, source)


def _eval(e: Expr, t: Jet2, env: Mapping[str, float], source) -> Jet2:
    if isinstance(e, Num):
        return const(e.value)
    if isinstance(e, Var):
        return t
    if isinstance(e, Const):
        try:
            return const(env[e.name])
        except KeyError:
            raise UnknownIdentifierError(e.name, e.span) from None
    if isinstance(e, Neg):
        return -_eval(e.operand, t, env, source)
    try:
        if isinstance(e, BinOp):
            lhs = _eval(e.left, t, env, source)
            rhs = _eval(e.right, t, env, source)
            if e.op == "+":
                return lhs + rhs
            if e.op == "-":
                return lhs - rhs
            if e.op == "*":
                return lhs * rhs
            if e.op == "/":
                return lhs / rhs
            return lhs**rhs
        if isinstance(e, Call):
            arg = _eval(e.arg, t, env, source)
            return getattr(arg, e.func)()
    except JetDomainError as exc:
        raise ExprDomainError(exc, e.span, source) from exc
    raise TypeError(f"not an expression node: {e!r}")


def to_text(e: Expr) -> str:
    """Fully parenthesised rendering; ``parse_expression(to_text(e)) == e``."""
    if isinstance(e, Num):
        if e.value < 0 or not math.isfinite(e.value):
            raise ValueError(f"literal {e.value!r} has no textual form")
        return repr(float(e.value))
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({to_text(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def free_constants(e: Expr) -> set[str]:
    if isinstance(e, Const):
        return {e.name}
    if isinstance(e, Neg):
        return free_constants(e.operand)
    if isinstance(e, BinOp):
        return free_constants(e.left) | free_constants(e.right)
    if isinstance(e, Call):
        return free_constants(e.arg)
    return set()
