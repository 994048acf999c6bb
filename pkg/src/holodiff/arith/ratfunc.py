"""Rational functions over the rationals, kept in lowest terms with monic denominator."""

from fractions import Fraction

from .poly import Poly, poly_gcd


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        if den is None:
            den = Poly.constant(1)
        elif not isinstance(den, Poly):
            den = Poly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.constant(1)
            elif not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, p):
        return cls(p, Poly.constant(1), _reduced=True)

    @classmethod
    def constant(cls, c):
        return cls(Poly.constant(c), Poly.constant(1), _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self == _coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.is_constant():
            return RatFunc(self.num + o.num * self.den, self.den, _reduced=True)
        if self.den.is_constant():
            return RatFunc(self.num * o.den + o.num, o.den, _reduced=True)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc(Poly())
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc(self.num * o.num, Poly.constant(1), _reduced=True)
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1, d2 = self.num, o.den
        n2, d1 = o.num, self.den
        if not g1.is_constant():
            n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
        if not g2.is_constant():
            n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
        den = d1 * d2
        lc = den.lc
        return RatFunc(n1 * n2 * (1 / lc), den * (1 / lc), _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, _reduced=False)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num(x) / d

    def shift(self, c):
        """``z -> self(z + c)``."""
        return RatFunc(self.num.shift(c), self.den.shift(c), _reduced=True)

    def reflect(self):
        """``z -> self(-z)``."""
        den = self.den.reflect()
        lc = den.lc
        return RatFunc(self.num.reflect() * (1 / lc), den * (1 / lc), _reduced=True)

    def valuation_at(self, a):
        """Order of vanishing at ``a`` (``None`` for zero)."""
        if self.is_zero():
            return None
        return self.num.valuation_at(a) - self.den.valuation_at(a)

    def to_str(self, var="z"):
        if self.den.is_constant():
            return self.num.to_str(var)
        n = self.num.to_str(var)
        if len(self.num.coefficients) > 1 or n.startswith("-"):
            n = f"({n})"
        return f"{n}/({self.den.to_str(var)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc({self.to_str()})"


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RatFunc.constant(x)
    return None


def as_ratfunc(x):
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return r
