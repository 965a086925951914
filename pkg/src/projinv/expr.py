"""Expression trees for curve components.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

so ``-t^2`` is ``-(t^2)``, ``2^3^2`` is ``2^(3^2)`` and ``-a*b`` is ``(-a)*b``.
The only free variable is ``t``; ``pi`` and ``e`` are constants.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from . import taylor
from .errors import DomainError, ExpressionSyntaxError, UnknownIdentifier

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "atan")
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLE = "t"


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = VARIABLE


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


Node = Union[Num, Var, Const, Neg, BinOp, Call]


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'name', 'op', 'end'
    text: str
    pos: int  # 1-based column


def tokenize(source):
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        if source[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(source, i)
        if m is None or m.end() == i:
            raise ExpressionSyntaxError(
                f"unexpected character {source[i]!r}", source, i + 1
            )
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start + 1))
        i = m.end()
    tokens.append(Token("end", "", n + 1))
    return tokens


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.tok
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExpressionSyntaxError(f"{message}, found {what}", self.source, tok.pos)

    def expect(self, text):
        if self.tok.kind != "op" or self.tok.text != text:
            self.fail(f"expected {text!r}")
        return self.advance()

    def list(self):
        items = [self.expr()]
        while self.tok.kind == "op" and self.tok.text == ",":
            self.advance()
            items.append(self.expr())
        if self.tok.kind != "end":
            self.fail("expected ',' or end of input")
        return items

    def single(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.fail("expected end of input")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            operand = self.unary()
            return Neg(operand) if op == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            self.advance()
            name = tok.text
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            if name == VARIABLE:
                return Var()
            if name in CONSTANTS:
                return Const(name)
            raise UnknownIdentifier(f"unknown identifier {name!r} at offset {tok.pos}")
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("expected a number, name or '('")


def parse_expression(source):
    return _Parser(source).single()


def parse_list(source):
    return _Parser(source).list()


# -- printing ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _fmt_num(v):
    if v < 0 or not math.isfinite(v):
        raise ValueError(f"cannot print literal {v!r}")
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def to_text(node, parent=0):
    """Canonical text with the minimal parentheses for the grammar above."""
    if isinstance(node, Num):
        if node.value < 0:
            return to_text(Neg(Num(-node.value)), parent)
        return _fmt_num(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({to_text(node.arg)})"
    if isinstance(node, Neg):
        s = "-" + to_text(node.operand, _PREC["neg"])
        return f"({s})" if parent > _PREC["neg"] else s
    p = _PREC[node.op]
    if node.op == "^":
        # left operand must be an atom; right may be any unary-level term
        left = to_text(node.left, p + 1)
        right = to_text(node.right, _PREC["neg"])
    else:
        left = to_text(node.left, p)
        right = to_text(node.right, p + 1)
    s = f"{left}{node.op}{right}" if node.op == "^" else f"{left} {node.op} {right}"
    return f"({s})" if parent > p else s


# -- evaluation --------------------------------------------------------------


def depends_on_t(node):
    if isinstance(node, Var):
        return True
    if isinstance(node, (Num, Const)):
        return False
    if isinstance(node, Neg):
        return depends_on_t(node.operand)
    if isinstance(node, Call):
        return depends_on_t(node.arg)
    return depends_on_t(node.left) or depends_on_t(node.right)


def eval_number(node, t=0.0):
    """Float evaluation (used for constant sub-expressions and sampling)."""
    return evaluate_jet(node, taylor.variable(t, 0)).value


def evaluate_jet(node, tjet):
    """Evaluate ``node`` with ``t`` bound to the jet ``tjet``."""
    if isinstance(node, Num):
        return taylor.constant(node.value, tjet.base_point, tjet.order)
    if isinstance(node, Var):
        return tjet
    if isinstance(node, Const):
        return taylor.constant(CONSTANTS[node.name], tjet.base_point, tjet.order)
    if isinstance(node, Neg):
        return -evaluate_jet(node.operand, tjet)
    if isinstance(node, Call):
        return taylor.jet_elem(evaluate_jet(node.arg, tjet), node.fn)
    left = evaluate_jet(node.left, tjet)
    if node.op == "^":
        if depends_on_t(node.right):
            return taylor.exp(evaluate_jet(node.right, tjet) * taylor.log(left))
        r = evaluate_jet(node.right, taylor.variable(tjet.base_point, 0)).value
        if not float(r).is_integer() and left.value <= 0:
            raise DomainError(f"non-integer power {r!r} of non-positive base")
        return taylor.jet_powf(left, r)
    right = evaluate_jet(node.right, tjet)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if right.value == 0.0:
        raise DomainError("division by zero")
    return left / right
