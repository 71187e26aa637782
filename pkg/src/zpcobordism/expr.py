"""Parser and evaluator for cobordism-class expressions.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)*
    atom   := INT | '(' expr ')' | NAME '[' INT (',' INT)* ']'

Symbols: ``CP[n]``, ``b[n]``, ``beta[n]``, ``H[m,n]`` and ``alpha[k,n]``
(the u^(n+1) coefficient of [u]_k). Division is only by nonzero scalars,
which is how rational literals such as ``3/2`` are written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from .fgl import alpha_coeff, beta, cp_class, milnor_hypersurface
from .graded import GradedElement
from .series import DEFAULT_TRUNC, SeriesError


class ExpressionError(ValueError):
    def __init__(self, message: str, offset: int = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str
    args: Tuple[int, ...]


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Sym, Neg, BinOp, Pow]

SYMBOL_ARITY = {"CP": 1, "b": 1, "beta": 1, "H": 2, "alpha": 2}

_INT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z_]\w*")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        offset = len(text[:pos].encode("utf-8"))
        m = _INT.match(text, pos)
        if m:
            tokens.append(("int", m.group(), offset))
            pos = m.end()
            continue
        m = _NAME.match(text, pos)
        if m:
            tokens.append(("name", m.group(), offset))
            pos = m.end()
            continue
        if ch not in "+-*/^()[],":
            raise ExpressionError(f"unexpected character {ch!r}", offset)
        tokens.append(("op", ch, offset))
        pos += 1
    tokens.append(("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, off = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ExpressionError(f"expected {value!r}, found {found}", off)

    def parse(self) -> Node:
        node = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected {text!r}", off)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        while self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, text, off = self.take()
            if kind == "op" and text == "-":
                raise ExpressionError("negative exponents are not allowed", off)
            if kind != "int":
                raise ExpressionError("exponent must be a non-negative integer literal", off)
            node = Pow(node, int(text))
        return node

    def atom(self) -> Node:
        kind, text, off = self.take()
        if kind == "int":
            return Num(int(text))
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            if text not in SYMBOL_ARITY:
                raise ExpressionError(f"unknown symbol {text!r}", off)
            self.expect("[")
            args = [self.integer()]
            while self.peek()[1] == ",":
                self.take()
                args.append(self.integer())
            self.expect("]")
            if len(args) != SYMBOL_ARITY[text]:
                raise ExpressionError(
                    f"{text} takes {SYMBOL_ARITY[text]} index(es), got {len(args)}", off
                )
            return Sym(text, tuple(args))
        found = "end of input" if kind == "end" else repr(text)
        raise ExpressionError(f"unexpected {found}", off)

    def integer(self) -> int:
        kind, text, off = self.take()
        if kind != "int":
            raise ExpressionError("expected a non-negative integer index", off)
        return int(text)


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


# -- printing ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_text(node: Node) -> str:
    """Minimal-parenthesis rendering that reparses to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return f"{node.name}[{','.join(map(str, node.args))}]"
    if isinstance(node, Neg):
        inner = to_text(node.operand)
        return "-" + (f"({inner})" if _prec(node.operand) < 3 else inner)
    if isinstance(node, Pow):
        base = to_text(node.base)
        return (f"({base})" if _prec(node.base) < 4 else base) + f"^{node.exponent}"
    p = _PREC[node.op]
    left, right = to_text(node.left), to_text(node.right)
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}" if p == 1 else f"{left}{node.op}{right}"


# -- evaluation --------------------------------------------------------------

def _symbol(node: Sym, T: int) -> GradedElement:
    name, args = node.name, node.args
    try:
        if name == "CP":
            return cp_class(args[0])
        if name == "b":
            return GradedElement.generator(args[0])
        if name == "beta":
            return beta(args[0], max(T, args[0] + 1))
        if name == "H":
            return milnor_hypersurface(args[0], args[1], max(T, args[0] + args[1]))
        if name == "alpha":
            k, n = args
            if n == 0:
                return GradedElement.scalar(k)
            return alpha_coeff(k, n, max(T, n + 1))
    except (SeriesError, ValueError) as exc:
        raise ExpressionError(f"{to_text(node)}: {exc}") from exc
    raise ExpressionError(f"unknown symbol {name!r}")


def evaluate(node: Node, T: int = DEFAULT_TRUNC) -> GradedElement:
    if isinstance(node, Num):
        return GradedElement.scalar(node.value)
    if isinstance(node, Sym):
        return _symbol(node, T)
    if isinstance(node, Neg):
        return -evaluate(node.operand, T)
    if isinstance(node, Pow):
        return evaluate(node.base, T) ** node.exponent
    a, b = evaluate(node.left, T), evaluate(node.right, T)
    if node.op in "+-":
        if a.degree != b.degree:
            raise ExpressionError(f"mixed degrees {a.degree} and {b.degree} in a sum")
        return a + b if node.op == "+" else a - b
    if node.op == "*":
        return a * b
    if b.degree != 0:
        raise ExpressionError(f"division by an element of degree {b.degree}; only scalars may divide")
    if b.scalar_value() == 0:
        raise ExpressionError("division by zero")
    return a / b


def evaluate_text(text: str, T: int = DEFAULT_TRUNC) -> GradedElement:
    return evaluate(parse_expression(text), T)
