"""Truncated Laurent series in ``pi = z - a`` with tracked precision.

A series is known modulo ``pi**prec`` (absolute precision).  ``prec=None``
marks an exact Laurent polynomial.  Arithmetic propagates precision the
usual way, so every stored coefficient is correct.
"""

from fractions import Fraction
from math import gcd

from ..errors import InsufficientPrecision
from . import kernels as K
from .poly import Poly
from .ratfunc import RatFunc, as_ratfunc


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a < b else b


class LaurentTrunc:
    """Laurent series at ``point`` known through absolute exponent ``prec - 1``."""

    __slots__ = ("point", "_lo", "_n", "_d", "_prec")

    def __init__(self, point, valuation, coefficients, order=None):
        """Build from rational ``coefficients`` for exponents ``valuation, valuation+1, ...``.

        ``order`` is the relative truncation order ``N``; ``None`` means exact.
        """
        coeffs = [Fraction(c) for c in coefficients]
        den = 1
        for c in coeffs:
            den = den // gcd(den, c.denominator) * c.denominator
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        prec = None if order is None else valuation + order
        self._set(Fraction(point), valuation, nums, den, prec)

    def _set(self, point, lo, nums, den, prec):
        self.point = point
        nums = list(nums)
        if den < 0:
            den = -den
            nums = [-x for x in nums]
        if prec is not None:
            size = prec - lo
            if size <= 0:
                nums = []
            elif len(nums) > size:
                nums = nums[:size]
            else:
                nums = nums + [0] * (size - len(nums))
        else:
            while nums and nums[-1] == 0:
                nums.pop()
        k = 0
        while k < len(nums) and nums[k] == 0:
            k += 1
        if k == len(nums):
            nums = []
            lo = prec if prec is not None else 0
        elif k:
            nums = nums[k:]
            lo += k
        if nums:
            g = gcd(K.content(nums), den)
            if g != 1:
                nums = [x // g for x in nums]
                den //= g
        else:
            den = 1
        self._lo = lo
        self._n = tuple(nums)
        self._d = den
        self._prec = prec

    @classmethod
    def _raw(cls, point, lo, nums, den, prec):
        s = cls.__new__(cls)
        s._set(point, lo, nums, den, prec)
        return s

    @classmethod
    def zero(cls, point, prec=None):
        return cls._raw(Fraction(point), 0 if prec is None else prec, [], 1, prec)

    @classmethod
    def one(cls, point):
        return cls._raw(Fraction(point), 0, [1], 1, None)

    @classmethod
    def monomial(cls, point, k, c=1):
        c = Fraction(c)
        return cls._raw(Fraction(point), k, [c.numerator], c.denominator, None)

    @classmethod
    def from_poly(cls, point, p, shift=0):
        """Exact series ``pi**shift * p(pi)`` for a polynomial ``p`` in ``pi``."""
        nums, den = p.int_coeffs
        return cls._raw(Fraction(point), shift, nums, den, None)

    # -- views ---------------------------------------------------------
    @property
    def valuation(self):
        """Lowest exponent; for a zero truncation the precision bound, for exact zero ``None``."""
        if not self._n:
            return self._prec
        return self._lo

    @property
    def precision(self):
        return self._prec

    @property
    def order(self):
        """Relative truncation order ``N`` (``None`` when exact)."""
        if self._prec is None:
            return None
        return self._prec - self._lo

    @property
    def coefficients(self):
        d = self._d
        return tuple(Fraction(x, d) for x in self._n)

    def is_exact(self):
        return self._prec is None

    def is_zero(self):
        """True only for a certified (exact) zero."""
        return not self._n and self._prec is None

    def is_zero_trunc(self):
        """True if no nonzero coefficient is known (zero up to precision)."""
        return not self._n

    def coeff(self, k):
        if self._prec is not None and k >= self._prec:
            raise InsufficientPrecision(f"coefficient of pi^{k} beyond precision {self._prec}")
        i = k - self._lo
        if 0 <= i < len(self._n):
            return Fraction(self._n[i], self._d)
        return Fraction(0)

    def leading(self):
        if not self._n:
            raise InsufficientPrecision("zero truncation has no leading term")
        return Fraction(self._n[0], self._d)

    def max_exponent(self):
        """Highest exponent with a stored nonzero coefficient (exact series)."""
        if not self._n:
            return None
        return self._lo + len(self._n) - 1

    def __repr__(self):
        terms = []
        for i, x in enumerate(self._n):
            if x:
                terms.append(f"{Fraction(x, self._d)}*pi^{self._lo + i}")
        body = " + ".join(terms) if terms else "0"
        tail = "" if self._prec is None else f" + O(pi^{self._prec})"
        return f"LaurentTrunc[{self.point}]({body}{tail})"

    def __eq__(self, other):
        if not isinstance(other, LaurentTrunc):
            return NotImplemented
        return (self.point == other.point and self._lo == other._lo and self._n == other._n
                and self._d == other._d and self._prec == other._prec)

    def __hash__(self):
        return hash((self.point, self._lo, self._n, self._d, self._prec))

    def agrees(self, other):
        """Coefficients agree at every exponent known for both."""
        prec = _min_prec(self._prec, other._prec)
        lo = min(self._lo if self._n else (prec if prec is not None else 0),
                 other._lo if other._n else (prec if prec is not None else 0))
        hi = prec
        if hi is None:
            return self == other
        for k in range(lo, hi):
            if self.coeff(k) != other.coeff(k):
                return False
        return True

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentTrunc.monomial(self.point, 0, other) if other else LaurentTrunc.zero(self.point)
        if not isinstance(other, LaurentTrunc):
            return None
        if other.point != self.point:
            raise ValueError("series at different points")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self._axpy(1, o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self._axpy(1, o, -1)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o._axpy(1, self, -1)

    def _axpy(self, ca, o, cb):
        prec = _min_prec(self._prec, o._prec)
        if not o._n:
            return self._cut(prec)
        if not self._n:
            r = o._cut(prec)
            return r if cb == 1 else r._scale_int(cb)
        lo = min(self._lo, o._lo)
        a = [0] * (self._lo - lo) + list(self._n)
        b = [0] * (o._lo - lo) + list(o._n)
        L = self._d // gcd(self._d, o._d) * o._d
        nums = K.axpy(ca * (L // self._d), a, cb * (L // o._d), b)
        return LaurentTrunc._raw(self.point, lo, nums, L, prec)

    def _scale_int(self, c):
        return LaurentTrunc._raw(self.point, self._lo, [c * x for x in self._n], self._d, self._prec)

    def _cut(self, prec):
        if prec == self._prec:
            return self
        return LaurentTrunc._raw(self.point, self._lo, self._n, self._d, prec)

    def truncate(self, prec):
        """Forget coefficients at exponents ``>= prec``."""
        return self._cut(_min_prec(self._prec, prec))

    def __neg__(self):
        return self._scale_int(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if c == 0 and self._prec is None:
                return LaurentTrunc.zero(self.point)
            return LaurentTrunc._raw(self.point, self._lo, [c.numerator * x for x in self._n],
                                     self._d * c.denominator, self._prec)
        o = self._check(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return LaurentTrunc.zero(self.point)
        lo = self._lo + o._lo
        cands = []
        if self._prec is not None:
            cands.append(self._prec + o.valuation)
        if o._prec is not None:
            cands.append(o._prec + self.valuation)
        prec = min(cands) if cands else None
        den = self._d * o._d
        if not self._n or not o._n:
            return LaurentTrunc._raw(self.point, lo, [], 1, prec)
        if prec is None:
            nums = K.conv(self._n, o._n)
        else:
            nums = K.conv_trunc(self._n, o._n, prec - lo)
        return LaurentTrunc._raw(self.point, lo, nums, den, prec)

    __rmul__ = __mul__

    def shift_exponent(self, k):
        """Multiply by ``pi**k``."""
        prec = None if self._prec is None else self._prec + k
        return LaurentTrunc._raw(self.point, self._lo + k, self._n, self._d, prec)

    def inverse(self, order=None):
        """Multiplicative inverse.

        Relative precision is preserved for truncated input; an exact series
        with more than one term needs an explicit relative ``order``.
        """
        if not self._n:
            raise InsufficientPrecision("cannot invert a zero truncation")
        lo = self._lo
        if self._prec is None:
            if len(self._n) == 1:
                c = Fraction(self._d, self._n[0])
                return LaurentTrunc._raw(self.point, -lo, [c.numerator], c.denominator, None)
            if order is None:
                raise ValueError("inverse of an exact non-monomial needs an order")
            N = order
        else:
            N = self._prec - lo
            if order is not None:
                N = min(N, order)
        u = self._n
        v = K.inv_series(u, N)
        u0 = u[0]
        nums = [self._d * x * u0 ** (N - 1 - k) for k, x in enumerate(v)]
        return LaurentTrunc._raw(self.point, -lo, nums, u0 ** N, -lo + N)

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if o._prec is None and len(o._n) > 1:
            # exact divisor: use the precision of the dividend
            if self._prec is None:
                raise ValueError("exact division by a non-monomial needs an order")
            return self * o.inverse(order=max(1, self._prec - self.valuation))
        return self * o.inverse()

    def unit_part(self):
        """``(k, u)`` with ``self = pi**k * u`` and ``u`` a unit series."""
        if not self._n:
            raise InsufficientPrecision("zero truncation has no unit part")
        return self._lo, self.shift_exponent(-self._lo)

    def split(self):
        """``(g, f)``: ``g`` the principal part (negative exponents, exact) and ``f`` the rest."""
        neg = [x for i, x in enumerate(self._n) if self._lo + i < 0]
        g = LaurentTrunc._raw(self.point, self._lo, neg, self._d, None)
        start = max(0, -self._lo)
        pos = list(self._n[start:])
        f = LaurentTrunc._raw(self.point, max(self._lo, 0), pos, self._d, self._prec)
        return g, f

    def to_ratfunc(self):
        """Exact series as a rational function of ``z`` (``pi = z - point``)."""
        if self._prec is not None:
            raise ValueError("only exact series convert to rational functions")
        if not self._n:
            return RatFunc(Poly())
        p = Poly._raw(list(self._n), self._d).shift(-self.point)
        if self._lo >= 0:
            return RatFunc.from_poly(p * Poly.from_roots([self.point] * self._lo))
        return RatFunc(p, Poly.from_roots([self.point] * (-self._lo)))

    def poly_part(self):
        """``(lo, Poly in pi)`` for an exact series."""
        return self._lo, Poly._raw(list(self._n), self._d)


def laurent_expand(f, a, N):
    """Expansion of the rational function ``f`` at ``a`` to ``N`` terms from its valuation."""
    f = as_ratfunc(f)
    a = Fraction(a)
    if f.is_zero():
        return LaurentTrunc.zero(a)
    num = f.num.shift(a)
    den = f.den.shift(a)
    vn = num.low_valuation()
    vd = den.low_valuation()
    nn, nd = num.int_coeffs
    dn, dd = den.int_coeffs
    nser = LaurentTrunc._raw(a, 0, nn[vn:], nd, None)
    dser = LaurentTrunc._raw(a, 0, dn[vd:], dd, None)
    s = nser.truncate(N) * dser.inverse(order=N)
    return s.shift_exponent(vn - vd).truncate(vn - vd + N)


def expand_exact_parts(f, a):
    """Write ``f = pi**v * n(pi)/d(pi)`` with ``n(0), d(0) != 0``; returns ``(v, n, d)`` polys in pi."""
    f = as_ratfunc(f)
    num = f.num.shift(a)
    den = f.den.shift(a)
    vn = num.low_valuation()
    vd = den.low_valuation()
    nn, nd = num.int_coeffs
    dn, dd = den.int_coeffs
    return vn - vd, Poly._raw(list(nn[vn:]), nd), Poly._raw(list(dn[vd:]), dd)
