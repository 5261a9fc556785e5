"""Small expression language for time- and state-dependent coefficients.

Grammar (radians throughout)::

    expr   :=  term  (('+' | '-') term)*
    term   :=  unary (('*' | '/') unary)*
    unary  :=  '-' unary | power
    power  :=  atom ('^' unary)?          # right-associative, binds above unary minus
    atom   :=  number | 't' | 'u' | 'x<k>' | func '(' expr ')' | '(' expr ')'

Recognized functions: sin cos tan sinh cosh tanh exp log sqrt abs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DomainError, ExprSyntaxError, UnboundVariable, UnknownIdentifier

FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": abs,
}

_VAR_RE = re.compile(r"^(t|u|x[1-9][0-9]*)$")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        while pos < len(source) and source[pos].isspace():
            pos += 1
        if pos >= len(source):
            break
        m = _TOKEN_RE.match(source, pos)
        if m is None or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"trailing input {val!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = BinOp(val, node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                node = BinOp(val, node, self.unary())
            else:
                return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if val in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(val, arg)
            if _VAR_RE.match(val):
                return Var(val)
            raise UnknownIdentifier(f"unknown identifier {val!r} at offset {pos}")
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(
            f"expected number, identifier or '(', found {val or 'end of input'!r}", pos
        )


def parse(source):
    """Parse an expression string into an immutable AST."""
    return _Parser(source).parse()


def variables(expr):
    """Set of variable names referenced by the expression."""
    if isinstance(expr, Num):
        return set()
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, Neg):
        return variables(expr.operand)
    if isinstance(expr, BinOp):
        return variables(expr.left) | variables(expr.right)
    if isinstance(expr, Call):
        return variables(expr.arg)
    raise TypeError(f"not an expression node: {expr!r}")


def evaluate(expr, t=None, x=None, u=None):
    """Evaluate with t/x/u bindings; real-domain violations raise DomainError."""
    env = {}
    if t is not None:
        env["t"] = float(t)
    if u is not None:
        env["u"] = float(u)
    if x is not None:
        for k, v in enumerate(x, start=1):
            env[f"x{k}"] = float(v)
    return _eval(expr, env)


def _eval(expr, env):
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Var):
        if expr.name not in env:
            raise UnboundVariable(f"variable {expr.name!r} not bound")
        return env[expr.name]
    if isinstance(expr, Neg):
        return -_eval(expr.operand, env)
    if isinstance(expr, BinOp):
        a = _eval(expr.left, env)
        b = _eval(expr.right, env)
        if expr.op == "+":
            return a + b
        if expr.op == "-":
            return a - b
        if expr.op == "*":
            return a * b
        if expr.op == "/":
            if b == 0:
                raise DomainError("division by zero")
            return a / b
        if expr.op == "^":
            try:
                r = a**b
            except (OverflowError, ZeroDivisionError) as exc:
                raise DomainError(str(exc)) from exc
            if isinstance(r, complex):
                raise DomainError(f"non-real power {a} ^ {b}")
            return r
        raise AssertionError(expr.op)
    if isinstance(expr, Call):
        v = _eval(expr.arg, env)
        if expr.func == "log" and v <= 0:
            raise DomainError("log of nonpositive value")
        if expr.func == "sqrt" and v < 0:
            raise DomainError("sqrt of negative value")
        try:
            return FUNCTIONS[expr.func](v)
        except (ValueError, OverflowError) as exc:
            raise DomainError(f"{expr.func}({v}): {exc}") from exc
    raise TypeError(f"not an expression node: {expr!r}")


def _pycode(expr):
    if isinstance(expr, (int, float)):
        return repr(float(expr))
    if isinstance(expr, Num):
        return repr(expr.value)
    if isinstance(expr, Var):
        if expr.name in ("t", "u"):
            return expr.name
        return f"x[{int(expr.name[1:]) - 1}]"
    if isinstance(expr, Neg):
        return f"(-{_pycode(expr.operand)})"
    if isinstance(expr, BinOp):
        op = "**" if expr.op == "^" else expr.op
        return f"({_pycode(expr.left)} {op} {_pycode(expr.right)})"
    if isinstance(expr, Call):
        return f"_fn_{expr.func}({_pycode(expr.arg)})"
    raise TypeError(f"not an expression node: {expr!r}")


def compile_fn(expr):
    """Compile an AST to a fast callable f(t, x, u).

    The compiled form skips the interpreter's explicit domain checks;
    real-domain violations surface as DomainError raised from the underlying
    math-library errors. Intended for integrator hot loops.
    """
    env = {f"_fn_{name}": fn for name, fn in FUNCTIONS.items()}
    raw = eval(f"lambda t=None, x=None, u=None: {_pycode(expr)}", env)

    def call(t=None, x=None, u=None):
        try:
            return raw(t, x, u)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(str(exc)) from exc

    return call


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def pretty(expr, parent_prec=0):
    """Render an AST back to source that reparses to an identical tree."""
    if isinstance(expr, Num):
        return _fmt_num(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.func}({pretty(expr.arg)})"
    if isinstance(expr, Neg):
        inner = pretty(expr.operand, _PREC["neg"])
        text = f"-{inner}"
        return f"({text})" if parent_prec > _PREC["neg"] else text
    if isinstance(expr, BinOp):
        prec = _PREC[expr.op]
        # left-assoc for + - * /: right child needs a bump; ^ is the mirror case
        if expr.op == "^":
            left = pretty(expr.left, prec + 1)
            right = pretty(expr.right, prec)
        else:
            left = pretty(expr.left, prec)
            right = pretty(expr.right, prec + 1)
        text = f"{left} {expr.op} {right}"
        return f"({text})" if parent_prec > prec else text
    raise TypeError(f"not an expression node: {expr!r}")


def _fmt_num(v):
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)
