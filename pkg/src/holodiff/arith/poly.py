"""Univariate polynomials over the rationals.

A polynomial is stored as a tuple of integer numerators (lowest degree
first, no trailing zeros) over one positive common denominator, reduced so
that the denominator shares no factor with the numerator content.  The
public view is ``coefficients``, a tuple of ``Fraction``.
"""

from fractions import Fraction
from math import gcd

from . import kernels as K
from .rat import format_rat


def _trim(nums):
    n = len(nums)
    while n and nums[n - 1] == 0:
        n -= 1
    return nums[:n]


def _lcm(a, b):
    return a // gcd(a, b) * b


def _primitive(nums):
    c = K.content(nums)
    if c == 0:
        return []
    if nums[-1] < 0:
        c = -c
    if c == 1:
        return list(nums)
    return [x // c for x in nums]


class Poly:
    """Immutable polynomial in one variable ``z`` with rational coefficients."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, coeffs=()):
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = _lcm(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        self._set(nums, den)

    def _set(self, nums, den):
        nums = _trim(list(nums))
        if not nums:
            self._n, self._d = (), 1
        else:
            g = gcd(K.content(nums), den)
            if g != 1:
                nums = [x // g for x in nums]
                den //= g
            self._n, self._d = tuple(nums), den
        self._hash = None

    @classmethod
    def _raw(cls, nums, den=1):
        p = cls.__new__(cls)
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        p._set(nums, den)
        return p

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls._raw([c.numerator], c.denominator)

    @classmethod
    def monomial(cls, k, c=1):
        c = Fraction(c)
        return cls._raw([0] * k + [c.numerator], c.denominator)

    @classmethod
    def z(cls):
        return cls._raw([0, 1])

    @classmethod
    def from_roots(cls, roots):
        p = cls.constant(1)
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # -- views ---------------------------------------------------------
    @property
    def coefficients(self):
        d = self._d
        return tuple(Fraction(x, d) for x in self._n)

    @property
    def int_coeffs(self):
        """(numerators, denominator) pair."""
        return self._n, self._d

    @property
    def degree(self):
        return len(self._n) - 1

    def is_zero(self):
        return not self._n

    def is_constant(self):
        return len(self._n) <= 1

    @property
    def lc(self):
        if not self._n:
            return Fraction(0)
        return Fraction(self._n[-1], self._d)

    def coeff(self, k):
        if 0 <= k < len(self._n):
            return Fraction(self._n[k], self._d)
        return Fraction(0)

    def __bool__(self):
        return bool(self._n)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    # -- ring operations ---------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Poly.constant(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._n:
            return self
        if not self._n:
            return o
        L = _lcm(self._d, o._d)
        return Poly._raw(K.axpy(L // self._d, self._n, L // o._d, o._n), L)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-x for x in self._n], self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._n:
            return self
        L = _lcm(self._d, o._d)
        return Poly._raw(K.axpy(L // self._d, self._n, -(L // o._d), o._n), L)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self._n or not other._n:
                return Poly()
            return Poly._raw(K.conv(self._n, other._n), self._d * other._d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return Poly._raw([x * c.numerator for x in self._n], self._d * c.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other):
        """Euclidean division over the rationals: ``self = q*other + r``."""
        if not other._n:
            raise ZeroDivisionError("polynomial division by zero")
        if len(self._n) < len(other._n):
            return Poly(), self
        q, r, k = K.pseudo_divmod(self._n, other._n)
        # lc^k * A = q*B + r with A = self*da, B = other*db
        scale = other._n[-1] ** k * self._d
        return Poly._raw([x * other._d for x in q], scale), Poly._raw(r, scale)

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r._n:
            raise ArithmeticError("inexact polynomial division")
        return q

    def scale(self, c):
        return self * Fraction(c)

    def monic(self):
        if not self._n:
            return self
        lc = self._n[-1]
        return Poly._raw(list(self._n), lc) if lc > 0 else Poly._raw([-x for x in self._n], -lc)

    def primitive_int(self):
        """Primitive integer vector with positive leading coefficient."""
        return _primitive(self._n)

    # -- evaluation and substitutions ---------------------------------------
    def __call__(self, x):
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qp = 1
        for c in reversed(self._n):
            acc = acc * p + c * qp
            qp *= q
        # acc = sum c_i p^i q^(deg - i) * q (one extra factor from the loop)
        deg = len(self._n) - 1
        if deg < 0:
            return Fraction(0)
        return Fraction(acc, self._d * q ** deg)

    def shift(self, c):
        """The polynomial ``z -> self(z + c)``; also the expansion at ``c`` in ``pi``."""
        c = Fraction(c)
        if c == 0 or len(self._n) < 2:
            return self
        n, d = c.numerator, c.denominator
        m = len(self._n) - 1
        if d == 1:
            return Poly._raw(K.taylor_shift(self._n, n), self._d)
        # d^m f(n/d + pi) = F(n + d*pi) with F(y) = sum c_i d^(m-i) y^i
        F = [x * d ** (m - i) for i, x in enumerate(self._n)]
        H = K.taylor_shift(F, n)
        G = [x * d ** j for j, x in enumerate(H)]
        return Poly._raw(G, self._d * d ** m)

    def reflect(self):
        """The polynomial ``z -> self(-z)``."""
        return Poly._raw([-x if i & 1 else x for i, x in enumerate(self._n)], self._d)

    def valuation_at(self, a):
        """Multiplicity of ``a`` as a root (``None`` for the zero polynomial)."""
        if not self._n:
            return None
        s = self.shift(a)._n
        k = 0
        while s[k] == 0:
            k += 1
        return k

    def low_valuation(self):
        """Multiplicity of 0 as a root."""
        if not self._n:
            return None
        k = 0
        while self._n[k] == 0:
            k += 1
        return k

    def derivative(self):
        return Poly._raw([i * x for i, x in enumerate(self._n)][1:], self._d)

    # -- gcd -----------------------------------------------------------------
    def gcd(self, other):
        return poly_gcd(self, other)

    # -- text ----------------------------------------------------------------
    def to_str(self, var="z"):
        if not self._n:
            return "0"
        parts = []
        for k in range(len(self._n) - 1, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = format_rat(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{format_rat(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()})"


def poly_gcd(a, b):
    """Monic greatest common divisor (zero if both are zero)."""
    x, y = a.primitive_int(), b.primitive_int()
    if not x:
        return Poly._raw(y).monic() if y else Poly()
    if not y:
        return Poly._raw(x).monic()
    if len(x) < len(y):
        x, y = y, x
    while len(y) > 1:
        _, r, _ = K.pseudo_divmod(x, y)
        x, y = y, _primitive(_trim(r))
        if not y:
            return Poly._raw(x).monic()
    if len(y) == 1:
        return Poly.constant(1)
    return Poly._raw(x).monic()


def poly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        return Poly()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


ZERO = Poly()
ONE = Poly.constant(1)
Z = Poly.z()
