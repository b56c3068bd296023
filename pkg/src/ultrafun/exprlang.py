"""A small language for functions of one real variable ``x``.

Grammar (whitespace is ignored)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | factor
    factor   := base ('^' unary)?          # right-associative, binds tighter than '-'
    base     := number | 'x' | 'i' | 'pi' | ident '(' args ')' | '(' expr ')'

Functions: ``exp sin cos log abs ramp gauss`` with one argument, and
``poly(arg, c0, c1, ...)`` for ``c0 + c1*arg + ...`` with numeric coefficients.
There is no implicit multiplication, so ``2x`` is a syntax error.

Trees are immutable. Evaluation is vectorised and complex throughout.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import (DivisionByZero, EvaluationFailure, ExprSyntaxError,
                     NotDifferentiable, UnknownFunction)

__all__ = ["FuncExpr", "Num", "Var", "Const", "Neg", "BinOp", "Call", "Poly",
           "parse", "eval_expr", "symbolic_derivative", "to_string"]

UNARY_FUNCS = ("exp", "sin", "cos", "log", "abs", "ramp", "gauss")
CONSTANTS = {"i": 1j, "pi": math.pi}


class FuncExpr:
    """Base class of expression nodes."""

    def __call__(self, x):
        return eval_expr(self, x)

    def __str__(self):
        return to_string(self)


@dataclass(frozen=True)
class Num(FuncExpr):
    value: float


@dataclass(frozen=True)
class Var(FuncExpr):
    pass


@dataclass(frozen=True)
class Const(FuncExpr):
    name: str


@dataclass(frozen=True)
class Neg(FuncExpr):
    arg: FuncExpr


@dataclass(frozen=True)
class BinOp(FuncExpr):
    op: str
    left: FuncExpr
    right: FuncExpr


@dataclass(frozen=True)
class Call(FuncExpr):
    name: str
    arg: FuncExpr


@dataclass(frozen=True)
class Poly(FuncExpr):
    arg: FuncExpr
    coeffs: tuple


# --------------------------------------------------------------------------- lexer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)

OPERAND_START = ("number", "x", "i", "pi", "function", "(", "-")


@dataclass(frozen=True)
class _Tok:
    kind: str      # 'num', 'ident', an operator character, or 'end'
    text: str
    offset: int    # byte offset


def _tokenize(src: str):
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        boff = len(src[:pos].encode("utf-8"))
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", boff,
                                  OPERAND_START + ("+", "*", "/", "^", ")", ","))
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            out.append(_Tok(text if kind == "op" else kind, text, boff))
        pos = m.end()
    out.append(_Tok("end", "", len(src.encode("utf-8"))))
    return out


# --------------------------------------------------------------------------- parser

class _Parser:
    def __init__(self, src):
        self.toks = _tokenize(src)
        self.i = 0
        self.depth = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def _after_operand(self):
        exp = ["+", "-", "*", "/", "^"]
        exp.append(")" if self.depth else "end")
        return exp

    def fail(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {what}", t.offset, expected)

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail(self._after_operand())
        return e

    def expr(self):
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind in ("*", "/"):
            op = self.advance().kind
            left = BinOp(op, left, self.unary())
        return left

    def unary(self):
        if self.tok.kind == "-":
            self.advance()
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        base = self.base()
        if self.tok.kind == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def _signed_number(self):
        sign = 1.0
        if self.tok.kind == "-":
            self.advance()
            sign = -1.0
        if self.tok.kind != "num":
            self.fail(["number", "-"] if sign > 0 else ["number"])
        return sign * float(self.advance().text)

    def base(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.kind == "(":
            self.advance()
            self.depth += 1
            e = self.expr()
            self.depth -= 1
            if self.tok.kind != ")":
                self.fail(["+", "-", "*", "/", "^", ")"])
            self.advance()
            return e
        if t.kind == "ident":
            self.advance()
            if self.tok.kind == "(":
                return self.call(t)
            if t.text == "x":
                return Var()
            if t.text in CONSTANTS:
                return Const(t.text)
            raise ExprSyntaxError(f"unknown identifier {t.text!r}", t.offset, OPERAND_START)
        self.fail(OPERAND_START)

    def call(self, name_tok):
        name = name_tok.text
        if name not in UNARY_FUNCS and name != "poly":
            raise UnknownFunction(name, name_tok.offset)
        self.advance()  # '('
        self.depth += 1
        arg = self.expr()
        coeffs = []
        if name == "poly":
            while self.tok.kind == ",":
                self.advance()
                coeffs.append(self._signed_number())
            if not coeffs:
                self.fail([","])
        self.depth -= 1
        if self.tok.kind != ")":
            self.fail(["+", "-", "*", "/", "^", ")"] + ([","] if name == "poly" else []))
        self.advance()
        return Poly(arg, tuple(coeffs)) if name == "poly" else Call(name, arg)


def parse(src: str) -> FuncExpr:
    """Parse ``src`` into an expression tree.

    Raises
    ------
    ExprSyntaxError
        With the byte ``offset`` of the offending token and the set of
        tokens that would have been accepted there.
    UnknownFunction
        For a call to a name that is not a known function.
    """
    if not isinstance(src, str):
        raise TypeError("expression source must be a string")
    return _Parser(src).parse()


# --------------------------------------------------------------------------- printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _fmt_num(v: float) -> str:
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _prec(e):
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _PREC["neg"]
    if isinstance(e, Num) and e.value < 0:
        return _PREC["neg"]
    return _PREC["atom"]


def _wrap(e, need):
    s = to_string(e)
    return f"({s})" if _prec(e) < need else s


def to_string(e: FuncExpr) -> str:
    """Print ``e`` so that ``parse(to_string(e)) == e``."""
    if isinstance(e, Num):
        if e.value < 0:
            return f"-{_fmt_num(-e.value)}"
        if not math.isfinite(e.value):
            raise ValueError("non-finite literal cannot be printed")
        return _fmt_num(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _PREC["neg"])
    if isinstance(e, Call):
        return f"{e.name}({to_string(e.arg)})"
    if isinstance(e, Poly):
        cs = ", ".join(_fmt_num(c) if c >= 0 else f"-{_fmt_num(-c)}" for c in e.coeffs)
        return f"poly({to_string(e.arg)}, {cs})"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        if e.op == "^":
            # right-associative: a bare power on the right needs no parentheses
            return f"{_wrap(e.left, p + 1)}^{_wrap(e.right, _PREC['neg'])}"
        return f"{_wrap(e.left, p)} {e.op} {_wrap(e.right, p + 1)}"
    raise TypeError(f"not an expression node: {e!r}")


# --------------------------------------------------------------------------- evaluation

def _first_bad(x, mask):
    xs = np.broadcast_to(np.asarray(x), mask.shape)
    return xs.flat[int(np.argmax(mask))] if mask.ndim else xs.item()


def _ev(e, x):
    if isinstance(e, Num):
        return np.full(x.shape, complex(e.value))
    if isinstance(e, Var):
        return x.astype(complex)
    if isinstance(e, Const):
        return np.full(x.shape, CONSTANTS[e.name], dtype=complex)
    if isinstance(e, Neg):
        return -_ev(e.arg, x)
    if isinstance(e, Poly):
        z = _ev(e.arg, x)
        acc = np.zeros_like(z)
        for c in reversed(e.coeffs):
            acc = acc * z + c
        return acc
    if isinstance(e, Call):
        z = _ev(e.arg, x)
        if e.name == "exp":
            return np.exp(z)
        if e.name == "sin":
            return np.sin(z)
        if e.name == "cos":
            return np.cos(z)
        if e.name == "gauss":
            return np.exp(-z * z / 2)
        if e.name == "abs":
            return np.abs(z).astype(complex)
        if e.name == "ramp":
            return np.maximum(z.real, 0.0).astype(complex)
        if e.name == "log":
            bad = z == 0
            if np.any(bad):
                raise EvaluationFailure(f"log(0) at x={_first_bad(x, bad)!r}")
            return np.log(z)
    if isinstance(e, BinOp):
        a = _ev(e.left, x)
        if e.op == "^" and isinstance(e.right, (Num, Neg)) and _int_exponent(e.right) is not None:
            k = _int_exponent(e.right)
            if k < 0:
                bad = a == 0
                if np.any(bad):
                    raise DivisionByZero(_first_bad(x, bad))
                return 1.0 / a ** (-k)
            return a ** k
        b = _ev(e.right, x)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            bad = b == 0
            if np.any(bad):
                raise DivisionByZero(_first_bad(x, bad))
            return a / b
        if e.op == "^":
            zero = a == 0
            if np.any(zero & (b.real <= 0)):
                raise DivisionByZero(_first_bad(x, zero & (b.real <= 0)))
            with np.errstate(invalid="ignore", divide="ignore"):
                out = np.power(np.where(zero, 1.0, a), b)
            return np.where(zero, 0.0, out)
    raise TypeError(f"not an expression node: {e!r}")


def _int_exponent(e):
    if isinstance(e, Neg) and isinstance(e.arg, Num):
        v = -e.arg.value
    elif isinstance(e, Num):
        v = e.value
    else:
        return None
    return int(v) if float(v).is_integer() and abs(v) <= 64 else None


def eval_expr(e: FuncExpr, x):
    """Evaluate at a real scalar or array ``x``; returns complex of the same shape.

    Raises ``DivisionByZero(x)`` naming the first offending point, and
    ``EvaluationFailure`` when a finite input produces a non-finite value.
    """
    xa = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        out = _ev(e, xa)
    if not np.all(np.isfinite(out)):
        bad = ~np.isfinite(out)
        if np.all(np.isfinite(xa)):
            raise EvaluationFailure(f"non-finite value at x={_first_bad(xa, bad)!r}")
    if out.ndim == 0:
        return complex(out)
    return out


# --------------------------------------------------------------------------- derivative

ZERO, ONE = Num(0.0), Num(1.0)


def _num(v):
    # keep literals non-negative, as the parser produces them
    return Neg(Num(-v)) if v < 0 else Num(v)


def _is(e, v):
    return isinstance(e, Num) and e.value == v


def _add(a, b):
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    return BinOp("+", a, b)


def _sub(a, b):
    if _is(b, 0):
        return a
    if _is(a, 0):
        return Neg(b)
    return BinOp("-", a, b)


def _mul(a, b):
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    return BinOp("*", a, b)


def _div(a, b):
    if _is(a, 0):
        return ZERO
    if _is(b, 1):
        return a
    return BinOp("/", a, b)


def _depends_on_x(e) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, (Num, Const)):
        return False
    if isinstance(e, BinOp):
        return _depends_on_x(e.left) or _depends_on_x(e.right)
    return _depends_on_x(e.arg)


def symbolic_derivative(e: FuncExpr) -> FuncExpr:
    """d/dx of ``e`` by the usual rules, with light constant folding.

    ``abs`` and ``ramp`` are rejected with ``NotDifferentiable`` wherever
    their argument depends on ``x``.
    """
    if isinstance(e, (Num, Const)):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Neg):
        d = symbolic_derivative(e.arg)
        return ZERO if _is(d, 0) else Neg(d)
    if isinstance(e, Poly):
        du = symbolic_derivative(e.arg)
        dc = tuple(k * c for k, c in enumerate(e.coeffs) if k > 0)
        inner = Poly(e.arg, dc) if dc else ZERO
        return _mul(inner, du)
    if isinstance(e, Call):
        u = e.arg
        if e.name in ("abs", "ramp"):
            if not _depends_on_x(u):
                return ZERO
            raise NotDifferentiable(f"{e.name} has a kink and no symbolic derivative")
        du = symbolic_derivative(u)
        if e.name == "exp":
            outer = e
        elif e.name == "sin":
            outer = Call("cos", u)
        elif e.name == "cos":
            outer = Neg(Call("sin", u))
        elif e.name == "log":
            outer = _div(ONE, u)
        elif e.name == "gauss":
            outer = Neg(_mul(u, e))
        else:  # pragma: no cover
            raise NotDifferentiable(e.name)
        return _mul(outer, du)
    if isinstance(e, BinOp):
        a, b = e.left, e.right
        if e.op in "+-":
            da, db = symbolic_derivative(a), symbolic_derivative(b)
            return _add(da, db) if e.op == "+" else _sub(da, db)
        if e.op == "*":
            return _add(_mul(symbolic_derivative(a), b), _mul(a, symbolic_derivative(b)))
        if e.op == "/":
            da, db = symbolic_derivative(a), symbolic_derivative(b)
            num = _sub(_mul(da, b), _mul(a, db))
            return _div(num, BinOp("^", b, Num(2.0)))
        if e.op == "^":
            da = symbolic_derivative(a)
            if not _depends_on_x(b):
                # b * a^(b-1) * a'
                k = _int_exponent(b) if isinstance(b, (Num, Neg)) else None
                if isinstance(b, Num) or k is not None:
                    v = b.value if isinstance(b, Num) else float(k)
                    lowered = _num(v - 1.0)
                else:
                    lowered = BinOp("-", b, ONE)
                if _is(lowered, 0):
                    power = ONE
                elif _is(lowered, 1):
                    power = a
                else:
                    power = BinOp("^", a, lowered)
                return _mul(_mul(b, power), da)
            # a^b * (b' log a + b a'/a)
            db = symbolic_derivative(b)
            return _mul(e, _add(_mul(db, Call("log", a)), _div(_mul(b, da), a)))
    raise TypeError(f"not an expression node: {e!r}")
