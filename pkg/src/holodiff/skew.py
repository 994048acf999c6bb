"""Skew polynomial rings of difference and differential operators.

``DifferenceOperator`` lives in Q[z]<T, T^-1> with ``T z = (z - 1) T``;
``DifferentialOperator`` lives in Q[x, x^-1]<D> with ``D x = x D + 1``.
Both are kept in normal form: coefficients on the left, operator powers on
the right.  ``mellin_operator`` is the ring isomorphism sending ``x -> T``
and ``x D -> z``.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .arith.matrix import RatFuncMatrix
from .arith.poly import Poly
from .arith.ratfunc import RatFunc
from .errors import NotNormalizable, RankZero


class DifferenceOperator:
    """Finite sum of ``P_i(z) T^i`` stored as ``{i: Poly}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for i, p in (terms or {}).items():
            if not isinstance(p, Poly):
                p = Poly.constant(p)
            if p:
                clean[int(i)] = p
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls({0: Poly.constant(c)})

    @classmethod
    def z(cls):
        return cls({0: Poly.z()})

    @classmethod
    def tau(cls, k=1):
        return cls({k: Poly.constant(1)})

    @classmethod
    def from_poly(cls, p):
        return cls({0: p})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = DifferenceOperator({0: other})
        if not isinstance(other, DifferenceOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    @staticmethod
    def _coerce(x):
        if isinstance(x, DifferenceOperator):
            return x
        if isinstance(x, Poly):
            return DifferenceOperator({0: x})
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return DifferenceOperator.constant(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for i, p in o.terms.items():
            out[i] = out[i] + p if i in out else p
        return DifferenceOperator(out)

    __radd__ = __add__

    def __neg__(self):
        return DifferenceOperator({i: -p for i, p in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for i, p in self.terms.items():
            for j, q in o.terms.items():
                # T^i q(z) = q(z - i) T^i
                t = p * q.shift(-i)
                k = i + j
                out[k] = out[k] + t if k in out else t
        return DifferenceOperator(out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k):
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = DifferenceOperator.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def unit_inverse(self):
        """Inverse of a unit ``c T^k``."""
        if len(self.terms) != 1:
            raise ValueError("only c*T^k is invertible")
        (k, p), = self.terms.items()
        if not p.is_constant():
            raise ValueError("only c*T^k is invertible")
        return DifferenceOperator({-k: Poly.constant(1 / p.lc)})

    @property
    def tau_range(self):
        """``(lowest, highest)`` power of ``T`` present."""
        if not self.terms:
            raise ValueError("zero operator has no tau range")
        return min(self.terms), max(self.terms)

    def coefficient(self, i):
        return self.terms.get(i, Poly())

    def normalized(self):
        """Left multiple by a power of ``T`` with powers ``0..n`` and nonzero ends."""
        if not self.terms:
            raise NotNormalizable("the zero operator")
        lo, _ = self.tau_range
        return DifferenceOperator.tau(-lo) * self

    def apply(self, f):
        """Action on rational functions with ``(T f)(z) = f(z - 1)``."""
        f = RatFunc(f) if not isinstance(f, RatFunc) else f
        out = RatFunc.constant(0)
        for i, p in self.terms.items():
            out = out + RatFunc.from_poly(p) * f.shift(-i)
        return out

    def sorted_terms(self):
        """Terms ``(tau power, z degree, coefficient)``: tau ascending, then z degree descending."""
        out = []
        for i in sorted(self.terms):
            p = self.terms[i]
            cs = p.coefficients
            for d in range(len(cs) - 1, -1, -1):
                if cs[d]:
                    out.append((i, d, cs[d]))
        return out

    def __str__(self):
        return _format_terms([(c, [("z", d), ("T", i)]) for i, d, c in self.sorted_terms()])

    def __repr__(self):
        return f"DifferenceOperator({self})"


class DifferentialOperator:
    """Finite sum of ``c x^k D^j`` stored as ``{(j, k): Fraction}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for (j, k), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if j < 0:
                    raise ValueError("negative power of D")
                clean[(int(j), int(k))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def x(cls, k=1):
        return cls({(0, k): 1})

    @classmethod
    def d(cls, j=1):
        return cls({(j, 0): 1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DifferentialOperator.constant(other)
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    @staticmethod
    def _coerce(x):
        if isinstance(x, DifferentialOperator):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return DifferentialOperator.constant(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for key, c in o.terms.items():
            out[key] = out.get(key, 0) + c
        return DifferentialOperator(out)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialOperator({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for (b, a), c1 in self.terms.items():
            for (d, cexp), c2 in o.terms.items():
                # x^a D^b x^c D^d = sum_m C(b,m) c(c-1)...(c-m+1) x^(a+c-m) D^(b-m+d)
                for m, coef in _leibniz(b, cexp):
                    key = (b - m + d, a + cexp - m)
                    out[key] = out.get(key, 0) + c1 * c2 * coef
        return DifferentialOperator(out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k):
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = DifferentialOperator.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def unit_inverse(self):
        """Inverse of a unit ``c x^k``."""
        if len(self.terms) != 1:
            raise ValueError("only c*x^k is invertible")
        ((j, k), c), = self.terms.items()
        if j != 0:
            raise ValueError("only c*x^k is invertible")
        return DifferentialOperator({(0, -k): 1 / c})

    def sorted_terms(self):
        """Terms ``(D power, x power, coefficient)``: D ascending, then x power descending."""
        return [(j, k, self.terms[(j, k)])
                for j, k in sorted(self.terms, key=lambda jk: (jk[0], -jk[1]))]

    def __str__(self):
        return _format_terms([(c, [("x", k), ("Dx", j)]) for j, k, c in self.sorted_terms()])

    def __repr__(self):
        return f"DifferentialOperator({self})"


@lru_cache(maxsize=None)
def _leibniz(b, c):
    out = []
    fall = 1
    for m in range(b + 1):
        if fall == 0:
            break
        out.append((m, comb(b, m) * fall))
        fall *= c - m
    return tuple(out)


def _format_terms(terms):
    if not terms:
        return "0"
    parts = []
    for c, factors in terms:
        syms = []
        for name, e in factors:
            if e == 1:
                syms.append(name)
            elif e:
                syms.append(f"{name}^{e}")
        mag = abs(c)
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if syms:
            body = "*".join(syms) if mag == 1 else mag_s + "*" + "*".join(syms)
        else:
            body = mag_s
        parts.append(("-" if c < 0 else "+", body))
    s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def skew_multiply_difference(P, Q):
    return DifferenceOperator._coerce(P) * DifferenceOperator._coerce(Q)


def skew_multiply_differential(P, Q):
    return DifferentialOperator._coerce(P) * DifferentialOperator._coerce(Q)


def _euler_power_diff(j):
    """``(x D)^j`` in the differential ring."""
    return _euler_cache(j)


@lru_cache(maxsize=64)
def _euler_cache(j):
    if j == 0:
        return DifferentialOperator.constant(1)
    return _euler_cache(j - 1) * DifferentialOperator({(1, 1): 1})


@lru_cache(maxsize=64)
def _d_power_image(j):
    """Image of ``D^j``: ``(T^-1 z)^j``."""
    if j == 0:
        return DifferenceOperator.constant(1)
    return _d_power_image(j - 1) * DifferenceOperator({-1: Poly.z().shift(1)})


def mellin_operator(D):
    """Ring isomorphism ``x -> T``, ``x D -> z`` (so ``D -> T^-1 z``)."""
    out = DifferenceOperator()
    for (j, k), c in D.terms.items():
        out = out + DifferenceOperator.tau(k) * _d_power_image(j) * c
    return out


def inverse_mellin_operator(Q):
    """Inverse isomorphism ``T -> x``, ``z -> x D``."""
    out = DifferentialOperator()
    for i, p in Q.terms.items():
        poly_part = DifferentialOperator()
        for d, c in enumerate(p.coefficients):
            if c:
                poly_part = poly_part + _euler_power_diff(d) * c
        out = out + poly_part * DifferentialOperator.x(i)
    return out


def companion_connection(Q):
    """Rank-n connection matrix of ``D/DQ`` on the basis ``s, Ts, ..., T^(n-1)s`` and the standard lattice.

    With ``Q`` normalised to ``sum_{i=0}^n P_i T^i`` the matrix of ``T`` on the
    basis is the companion matrix ``M(z)``; in the coordinate convention
    ``v(z) -> A(z-1) v(z-1)`` this gives ``A(z) = M(z+1)``.
    """
    from .lattices import DConnection, Lattice

    Qn = Q.normalized()
    _, n = Qn.tau_range
    if n == 0:
        raise RankZero("operator has tau-degree zero; the cyclic module is torsion")
    lead = RatFunc.from_poly(Qn.coefficient(n))
    rows = [[RatFunc.constant(0)] * n for _ in range(n)]
    for j in range(n - 1):
        rows[j + 1][j] = RatFunc.constant(1)
    for i in range(n):
        rows[i][n - 1] = -RatFunc.from_poly(Qn.coefficient(i)) / lead
    M = RatFuncMatrix(rows)
    conn = DConnection(M.shift(1))
    return conn, Lattice.standard(n)
