"""Stalks of lattices at a rational point, in canonical Hermite form.

A stalk at ``a`` is a full-rank module over the local ring of ``Q[z]`` at
``a``.  It is stored through a generator matrix in ``pi = z - a`` reduced to
the column Hermite form over the local ring:

* lower triangular, diagonal entries ``pi**e_i``;
* each entry left of the diagonal in row ``k`` is a Laurent polynomial in
  ``pi`` with exponents below ``e_k``.

This form is unique, so stalks compare by equality of their matrices.  All
operations are exact.  Intermediate entries are :class:`LocalElem` values
``pi**v * n / d`` with ``n(0), d(0) != 0``; these never need a polynomial
gcd, since a denominator that is a unit can simply be carried along.
"""

from fractions import Fraction

from .arith.matrix import RatFuncMatrix
from .arith.poly import Poly
from .arith.ratfunc import RatFunc
from .errors import SingularMatrix

_ONE = Poly.constant(1)


def _strip(p):
    """``(k, p / pi**k)`` with ``k`` the multiplicity of ``pi`` in ``p``."""
    nums, den = p.int_coeffs
    k = 0
    while nums[k] == 0:
        k += 1
    return k, (Poly._raw(nums[k:], den) if k else p)


def _times_pi(p, k):
    if not k:
        return p
    nums, den = p.int_coeffs
    return Poly._raw([0] * k + list(nums), den)


class LocalElem:
    """Nonzero ``pi**v * n(pi) / d(pi)`` with ``n(0) != 0 != d(0)``, or zero."""

    __slots__ = ("v", "n", "d")

    def __init__(self, v, n, d=_ONE):
        self.v, self.n, self.d = v, n, d

    @classmethod
    def make(cls, num, den=_ONE, v=0):
        """Normalise ``pi**v * num / den`` (``den(0) != 0``)."""
        if num.is_zero():
            return ZERO
        k, num = _strip(num)
        if den.is_constant():
            if den != _ONE:
                num = num * (1 / den.lc)
                den = _ONE
        return cls(v + k, num, den)

    @classmethod
    def from_ratfunc(cls, f):
        if f.is_zero():
            return ZERO
        kn, num = _strip(f.num)
        kd, den = _strip(f.den)
        return cls.make(num, den, kn - kd)

    @classmethod
    def monomial(cls, e, c=1):
        return cls(e, Poly.constant(c), _ONE)

    def to_ratfunc(self):
        if not self.n:
            return RatFunc.constant(0)
        if self.d == _ONE:
            if self.v >= 0:
                return RatFunc.from_poly(_times_pi(self.n, self.v))
            return RatFunc(self.n, Poly.monomial(-self.v), _reduced=True)
        return RatFunc(_times_pi(self.n, max(self.v, 0)), _times_pi(self.d, max(-self.v, 0)))

    def __bool__(self):
        return bool(self.n)

    def is_zero(self):
        return not self.n

    def key(self):
        return (self.v, self.n, self.d) if self.n else None

    def __eq__(self, other):
        return isinstance(other, LocalElem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"pi^{self.v}*({self.n})/({self.d})" if self.n else "0"

    def __neg__(self):
        return LocalElem(self.v, -self.n, self.d) if self.n else self

    def __mul__(self, o):
        if not self.n or not o.n:
            return ZERO
        d = o.d if self.d == _ONE else (self.d if o.d == _ONE else self.d * o.d)
        return LocalElem(self.v + o.v, self.n * o.n, d)

    def __truediv__(self, o):
        if not o.n:
            raise ZeroDivisionError("division by zero in the local ring")
        if not self.n:
            return ZERO
        num = self.n * o.d if o.d != _ONE else self.n
        den = self.d * o.n if self.d != _ONE else o.n
        return LocalElem.make(num, den, self.v - o.v)

    def __add__(self, o):
        if not o.n:
            return self
        if not self.n:
            return o
        v = min(self.v, o.v)
        a = _times_pi(self.n, self.v - v)
        b = _times_pi(o.n, o.v - v)
        if self.d == o.d:
            return LocalElem.make(a + b, self.d, v)
        return LocalElem.make(a * o.d + b * self.d, self.d * o.d, v)

    def __sub__(self, o):
        return self + (-o)

    def series(self, count):
        """First ``count`` coefficients of ``n / d`` (the expansion starts at ``pi**v``)."""
        a, b = self.n.coefficients, self.d.coefficients
        b0 = b[0]
        out = []
        for k in range(count):
            s = a[k] if k < len(a) else Fraction(0)
            for j in range(1, min(k, len(b) - 1) + 1):
                s -= b[j] * out[k - j]
            out.append(s / b0)
        return out


ZERO = LocalElem(0, Poly(), _ONE)


def val0(f):
    """Valuation at ``pi = 0`` of a nonzero local element or rational function of ``pi``."""
    if isinstance(f, LocalElem):
        return f.v
    return f.num.low_valuation() - f.den.low_valuation()


def pi_power(e):
    if e >= 0:
        return RatFunc.from_poly(Poly.monomial(e))
    return RatFunc(Poly.constant(1), Poly.monomial(-e), _reduced=True)


def _as_local(x):
    return x if isinstance(x, LocalElem) else LocalElem.from_ratfunc(x)


def local_rows(M):
    """Entries of a matrix (RatFuncMatrix or nested lists) as :class:`LocalElem` rows."""
    rows = M.tolist() if isinstance(M, RatFuncMatrix) else M
    return [[_as_local(x) for x in r] for r in rows]


def matmul(X, Y):
    n, k = len(X), len(Y)
    m = len(Y[0]) if k else 0
    out = []
    for i in range(n):
        Xi = X[i]
        row = []
        for j in range(m):
            s = ZERO
            for t in range(k):
                a = Xi[t]
                if a.n:
                    b = Y[t][j]
                    if b.n:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def principal_below(h, e):
    """Terms of the expansion of ``h`` at ``pi = 0`` with exponent below ``e``, as a Laurent polynomial."""
    if not h.n or h.v >= e:
        return ZERO
    if h.d == _ONE and h.v + h.n.degree < e:
        return h
    return LocalElem.make(Poly(h.series(e - h.v)), _ONE, h.v)


def hermite_local(rows):
    """Canonical local column Hermite form of an ``n x m`` generator list (``m >= n``, full row rank).

    Returns the canonical ``n x n`` matrix as :class:`LocalElem` rows and the diagonal exponents.
    """
    A = local_rows(rows)
    n = len(A)
    m = len(A[0]) if n else 0
    diag = []
    for i in range(n):
        best = None
        for j in range(i, m):
            x = A[i][j]
            if x.n and (best is None or x.v < best[0]):
                best = (x.v, j)
        if best is None:
            raise SingularMatrix("stalk generators do not have full rank")
        v, j = best
        if j != i:
            for r in A:
                r[i], r[j] = r[j], r[i]
        piv = A[i][i]
        for j in range(i + 1, m):
            x = A[i][j]
            if x.n:
                f = x / piv
                for r in range(i + 1, n):
                    if A[r][i].n:
                        A[r][j] = A[r][j] - f * A[r][i]
                A[i][j] = ZERO
        u = LocalElem.monomial(v) / piv
        A[i][i] = LocalElem.monomial(v)
        for r in range(i + 1, n):
            if A[r][i].n:
                A[r][i] = A[r][i] * u
        diag.append(v)
    for k in range(1, n):
        e = diag[k]
        for i in range(k):
            h = A[k][i]
            if not h.n:
                continue
            t = principal_below(h, e)
            if t is h:
                continue
            c = (h - t) / LocalElem.monomial(e)
            A[k][i] = t
            for r in range(k + 1, n):
                if A[r][k].n:
                    A[r][i] = A[r][i] - c * A[r][k]
    return [row[:n] for row in A], tuple(diag)


def lower_inverse(E):
    """Inverse of a canonical lower-triangular matrix with monomial diagonal (again Laurent polynomials)."""
    n = len(E)
    X = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        inv_d = LocalElem.monomial(-E[i][i].v)
        X[i][i] = inv_d
        for j in range(i):
            s = ZERO
            for k in range(j, i):
                if E[i][k].n and X[k][j].n:
                    s = s + E[i][k] * X[k][j]
            X[i][j] = -(s * inv_d)
    return X


def local_divisors(rows):
    """Local elementary divisors at ``pi = 0`` of a square matrix of local elements."""
    A = [list(r) for r in rows]
    n = len(A)
    out = []
    for t in range(n):
        best = None
        for i in range(t, n):
            for j in range(t, n):
                x = A[i][j]
                if x.n and (best is None or x.v < best[0]):
                    best = (x.v, i, j)
        if best is None:
            raise SingularMatrix("matrix is singular")
        v, i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        piv = A[t][t]
        for i in range(t + 1, n):
            if A[i][t].n:
                f = A[i][t] / piv
                A[i] = [a - f * b if k > t and b.n else a for k, (a, b) in enumerate(zip(A[i], A[t]))]
                A[i][t] = ZERO
        out.append(v)
    return out


class LocalLattice:
    """A full-rank lattice in the stalk at ``point``, in canonical form."""

    __slots__ = ("point", "E", "exponents", "_key", "_H")

    def __init__(self, point, generators, _canonical=False):
        self.point = Fraction(point)
        if _canonical:
            self.E = local_rows(generators)
            self.exponents = tuple(self.E[i][i].v for i in range(len(self.E)))
        else:
            self.E, self.exponents = hermite_local(generators)
        self._key = None
        self._H = None

    @classmethod
    def standard(cls, point, n):
        return cls(point, RatFuncMatrix.identity(n), _canonical=True)

    @classmethod
    def from_global(cls, G, point):
        """Stalk at ``point`` of the column span of a global matrix ``G(z)``."""
        return cls(point, G.shift(point))

    @property
    def rank(self):
        return len(self.E)

    @property
    def H(self):
        """Canonical generators as a RatFuncMatrix in ``pi``."""
        if self._H is None:
            self._H = RatFuncMatrix([[x.to_ratfunc() for x in r] for r in self.E])
        return self._H

    def key(self):
        if self._key is None:
            self._key = (self.point, tuple(tuple(x.key() for x in r) for r in self.E))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, LocalLattice):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LocalLattice(at {self.point}, exponents={list(self.exponents)})"

    def _same_point(self, other):
        if other.point != self.point:
            raise ValueError("stalks at different points")

    def __add__(self, other):
        self._same_point(other)
        return LocalLattice(self.point, [a + b for a, b in zip(self.E, other.E)])

    def dual(self):
        """The lattice ``{w : w^T v in O for all v}``, generated by ``H^{-T}``."""
        X = lower_inverse(self.E)
        return LocalLattice(self.point, [list(c) for c in zip(*X)])

    def __and__(self, other):
        self._same_point(other)
        return (self.dual() + other.dual()).dual()

    def transition(self, other):
        """``H_self^{-1} H_other``: coordinates of ``other``'s generators in ``self``'s basis."""
        self._same_point(other)
        return matmul(lower_inverse(self.E), other.E)

    def map_divisors(self, M, source):
        """Local elementary divisors of ``M`` read from ``source``'s basis into this one's."""
        X = matmul(lower_inverse(self.E), matmul(local_rows(M), source.E))
        return sorted(local_divisors(X))

    def divisors(self, other):
        """Local elementary divisors of the transition to ``other`` (positive: ``other`` is smaller)."""
        return sorted(local_divisors(self.transition(other)))

    def contains(self, other):
        return all(not x.n or x.v >= 0 for r in self.transition(other) for x in r)

    def quotient_partition(self, sub):
        """Partition of ``self / sub``; requires ``sub`` contained in ``self``."""
        d = self.divisors(sub)
        if d and d[0] < 0:
            raise ValueError("not a sublattice")
        return sorted((x for x in d if x > 0), reverse=True)

    def index(self, sub):
        """Length of ``self / sub`` when ``sub`` is contained in ``self``."""
        return sum(self.quotient_partition(sub))

    def transform(self, M, target=None):
        """Stalk generated by ``M(pi) * H`` at ``target`` (default: same point)."""
        return LocalLattice(self.point if target is None else target, matmul(local_rows(M), self.E))

    def scale(self, k):
        """Multiply by ``pi**k`` (the canonical form just shifts exponents)."""
        E = [[LocalElem(x.v + k, x.n, x.d) if x.n else x for x in r] for r in self.E]
        return LocalLattice(self.point, E, _canonical=True)

    def reflect(self):
        """Stalk at ``-point`` of the reflected lattice ``G(-z)``."""
        return LocalLattice(-self.point, self.H.reflect())

    def global_generators(self):
        """The canonical generators as a matrix in ``z``."""
        return self.H.shift(-self.point)
