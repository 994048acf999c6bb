"""Text grammar for operators and rational-function matrix entries.

Grammar (whitespace is insignificant)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := power (('*' | '/') power)*
    power  := atom ['^' ['-'] INT]
    atom   := INT | SYMBOL | '(' expr ')'

Symbols are ``z`` and ``T`` for difference operators, ``x`` and ``Dx`` for
differential operators.  Division is only allowed by nonzero constants in
operators (so ``3/2*z`` is fine); rational-function entries accept any
divisor.
"""

import re
from fractions import Fraction

from .arith.poly import Poly
from .arith.ratfunc import RatFunc
from .errors import ParseError
from .skew import DifferenceOperator, DifferentialOperator

_TOKEN = re.compile(r"\s*(?:(\d+)|(Dx|[A-Za-z_]\w*)|(\S))")


def _tokenize(text):
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    out = []
    pos = 0
    text = text.replace("\u2212", "-").rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos} in {text!r}")
        num, name, sym = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("sym", name))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r} in {text!r}")
            out.append(("op", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, algebra):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.alg = algebra

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        t = self.peek()
        if t[0] is None or (kind and t[0] != kind) or (value and t[1] != value):
            raise ParseError(f"expected {value or kind} in {self.text!r}")
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.power()
            v = v * w if op == "*" else self.alg.div(v, w)
        return v

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            e = self.take("int")[1]
            v = self.alg.pow(v, -e if neg else e)
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return self.alg.const(val)
        if kind == "sym":
            self.take()
            return self.alg.symbol(val)
        if (kind, val) == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


class _RatFuncAlgebra:
    symbols = {"z"}

    @staticmethod
    def const(n):
        return RatFunc.constant(n)

    @staticmethod
    def symbol(name):
        if name != "z":
            raise ParseError(f"unknown symbol {name!r} in a rational function")
        return RatFunc.from_poly(Poly.z())

    @staticmethod
    def div(a, b):
        if b.is_zero():
            raise ParseError("division by zero")
        return a / b

    @staticmethod
    def pow(a, e):
        if e < 0 and a.is_zero():
            raise ParseError("negative power of zero")
        return a ** e


class _OperatorAlgebra:
    def __init__(self, cls, symbols):
        self.cls = cls
        self.symbols = symbols

    def const(self, n):
        return self.cls.constant(n)

    def symbol(self, name):
        if name not in self.symbols:
            raise ParseError(f"unknown symbol {name!r}")
        return self.symbols[name]

    def div(self, a, b):
        c = _as_constant(b)
        if c is None or c == 0:
            raise ParseError("operators can only be divided by nonzero constants")
        return a * self.cls.constant(1 / c)

    def pow(self, a, e):
        if e < 0:
            try:
                return a.unit_inverse() ** (-e)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        return a ** e


def _as_constant(op):
    if isinstance(op, DifferenceOperator):
        if not op.terms:
            return Fraction(0)
        if set(op.terms) == {0} and op.terms[0].is_constant():
            return op.terms[0].lc
        return None
    if not op.terms:
        return Fraction(0)
    if set(op.terms) == {(0, 0)}:
        return op.terms[(0, 0)]
    return None


_DIFFERENCE = _OperatorAlgebra(
    DifferenceOperator, {"z": DifferenceOperator.z(), "T": DifferenceOperator.tau()})
_DIFFERENTIAL = _OperatorAlgebra(
    DifferentialOperator, {"x": DifferentialOperator.x(), "Dx": DifferentialOperator.d()})


def operator_kind(text):
    """``"difference"``, ``"differential"`` or ``None`` (constants only)."""
    names = {v for k, v in _tokenize(text) if k == "sym"}
    diff = names & {"z", "T"}
    dfl = names & {"x", "Dx"}
    unknown = names - {"z", "T", "x", "Dx"}
    if unknown:
        raise ParseError(f"unknown symbols {sorted(unknown)}")
    if diff and dfl:
        raise ParseError("operator mixes difference and differential symbols")
    if diff:
        return "difference"
    if dfl:
        return "differential"
    return None


def parse_difference_operator(text):
    return _Parser(text, _DIFFERENCE).parse()


def parse_differential_operator(text):
    return _Parser(text, _DIFFERENTIAL).parse()


def parse_operator(text, default="difference"):
    """Parse into whichever ring the symbols belong to."""
    kind = operator_kind(text) or default
    if kind == "difference":
        return parse_difference_operator(text)
    return parse_differential_operator(text)


def parse_ratfunc(text):
    return _Parser(text, _RatFuncAlgebra).parse()
