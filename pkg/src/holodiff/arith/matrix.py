"""Dense immutable matrices over Q, Q[z] and Q(z)."""

from fractions import Fraction

from ..errors import SingularMatrix
from .poly import Poly, poly_lcm
from .ratfunc import RatFunc, as_ratfunc


class Matrix:
    """Rectangular matrix with entries of one ring type."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries, rows=None, cols=None):
        e = tuple(tuple(self._coerce(x) for x in row) for row in entries)
        if rows is None:
            rows = len(e)
        if cols is None:
            cols = len(e[0]) if e else 0
        if len(e) != rows or any(len(r) != cols for r in e):
            raise ValueError("ragged or mis-sized matrix")
        self.rows = rows
        self.cols = cols
        self._e = e
        self._hash = None

    # subclasses override
    @staticmethod
    def _coerce(x):
        return x

    @classmethod
    def _zero(cls):
        raise NotImplementedError

    @classmethod
    def _one(cls):
        raise NotImplementedError

    @classmethod
    def _from_tuples(cls, e, rows, cols):
        m = cls.__new__(cls)
        m._e = e
        m.rows = rows
        m.cols = cols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows, cols):
        z = cls._zero()
        return cls._from_tuples(tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n):
        z, o = cls._zero(), cls._one()
        return cls._from_tuples(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diag(cls, items):
        items = [cls._coerce(x) for x in items]
        n = len(items)
        z = cls._zero()
        return cls._from_tuples(tuple(tuple(items[i] if i == j else z for j in range(n)) for i in range(n)), n, n)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def col(self, j):
        return tuple(r[j] for r in self._e)

    def tolist(self):
        return [list(r) for r in self._e]

    @property
    def shape(self):
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._e)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self._e)
        return f"{type(self).__name__}[{body}]"

    def map(self, f, cls=None):
        cls = cls or type(self)
        return cls._from_tuples(tuple(tuple(cls._coerce(f(x)) for x in r) for r in self._e), self.rows, self.cols)

    def transpose(self):
        return type(self)._from_tuples(tuple(zip(*self._e)) if self.rows else (), self.cols, self.rows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return type(self)._from_tuples(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.rows, self.cols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return type(self)._from_tuples(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), self.rows, self.cols)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cls = _result_class(self, other)
            cols = other.col_tuples()
            z = cls._zero()
            out = []
            for r in self._e:
                row = []
                for c in cols:
                    acc = z
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(tuple(row))
            return cls._from_tuples(tuple(out), self.rows, other.cols)
        return self.map(lambda x: x * other)

    def __rmul__(self, other):
        return self.map(lambda x: other * x)

    def col_tuples(self):
        return tuple(zip(*self._e)) if self.rows else tuple(() for _ in range(self.cols))

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return type(self)._from_tuples(tuple(r + s for r, s in zip(self._e, other._e)), self.rows,
                                       self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return type(self)._from_tuples(self._e + other._e, self.rows + other.rows, self.cols)

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return type(self)._from_tuples(tuple(tuple(self._e[i][j] for j in cols) for i in rows), len(rows), len(cols))

    def is_square(self):
        return self.rows == self.cols


_RANK = {}


def _result_class(a, b):
    ta, tb = type(a), type(b)
    if ta is tb:
        return ta
    return ta if _RANK.get(ta, 0) >= _RANK.get(tb, 0) else tb


class QMatrix(Matrix):
    """Matrix over the rationals."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        return x if isinstance(x, Fraction) else Fraction(x)

    @classmethod
    def _zero(cls):
        return Fraction(0)

    @classmethod
    def _one(cls):
        return Fraction(1)

    def rank(self):
        return len(_row_echelon(self.tolist())[1])

    def det(self):
        if not self.is_square():
            raise ValueError("det of non-square matrix")
        return _field_det([list(r) for r in self._e])

    def nullspace(self):
        """Basis (list of column vectors) of the right kernel."""
        rows, pivots = _row_echelon(self.tolist())
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, pc in zip(rows, pivots):
                v[pc] = -r[f]
            basis.append(v)
        return basis

    def inverse(self):
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._e)]
        rows, pivots = _row_echelon(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise SingularMatrix("rational matrix is singular")
        return QMatrix([r[n:] for r in rows[:n]])

    def charpoly(self):
        """Characteristic polynomial ``det(z*I - C)``."""
        n = self.rows
        z = Poly.z()
        m = [[(z if i == j else Poly()) - Poly.constant(self._e[i][j]) for j in range(n)] for i in range(n)]
        return bareiss_det(m) if n else Poly.constant(1)

    def power(self, k):
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


class PolyMatrix(Matrix):
    """Matrix over Q[z]."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, RatFunc):
            if not x.is_poly():
                raise ValueError("non-polynomial entry in PolyMatrix")
            return x.num * (1 / x.den.lc)
        return Poly.constant(x)

    @classmethod
    def _zero(cls):
        return Poly()

    @classmethod
    def _one(cls):
        return Poly.constant(1)

    def det(self):
        if not self.is_square():
            raise ValueError("det of non-square matrix")
        return bareiss_det(self.tolist())

    def to_ratfunc(self):
        return RatFuncMatrix._from_tuples(tuple(tuple(RatFunc.from_poly(x) for x in r) for r in self._e),
                                          self.rows, self.cols)

    def shift(self, c):
        return self.map(lambda p: p.shift(c))

    def max_degree(self):
        return max((x.degree for r in self._e for x in r), default=-1)


class RatFuncMatrix(Matrix):
    """Matrix over Q(z)."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        return as_ratfunc(x)

    @classmethod
    def _zero(cls):
        return RatFunc.constant(0)

    @classmethod
    def _one(cls):
        return RatFunc.constant(1)

    def clear_denominators(self):
        """``(H, d)`` with ``H`` polynomial, ``d`` monic and ``self = H / d``."""
        d = Poly.constant(1)
        for r in self._e:
            for x in r:
                if not x.den.is_constant():
                    d = poly_lcm(d, x.den)
        H = PolyMatrix._from_tuples(
            tuple(tuple(x.num * d.exact_div(x.den) for x in r) for r in self._e), self.rows, self.cols)
        return H, d

    def is_polynomial(self):
        return all(x.is_poly() for r in self._e for x in r)

    def to_poly(self):
        return PolyMatrix([[x for x in r] for r in self._e])

    def det(self):
        if not self.is_square():
            raise ValueError("det of non-square matrix")
        H, d = self.clear_denominators()
        return RatFunc(H.det(), d ** self.rows)

    def inverse(self):
        """Inverse via the adjugate of the cleared polynomial matrix."""
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        H, d = self.clear_denominators()
        rows = H.tolist()
        det = bareiss_det([list(r) for r in rows])
        if det.is_zero():
            raise SingularMatrix("matrix is singular over Q(z)")
        if n == 1:
            return RatFuncMatrix([[RatFunc(d, det)]])
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
                cof = bareiss_det(minor)
                if (i + j) & 1:
                    cof = -cof
                out[i][j] = RatFunc(cof * d, det)
        return RatFuncMatrix._from_tuples(tuple(tuple(r) for r in out), n, n)

    def shift(self, c):
        return self.map(lambda f: f.shift(c))

    def reflect(self):
        return self.map(lambda f: f.reflect())

    def denominator(self):
        return self.clear_denominators()[1]


_RANK.update({QMatrix: 0, PolyMatrix: 1, RatFuncMatrix: 2})


def bareiss_det(m):
    """Fraction-free determinant of a square list-of-lists over an exact domain with ``exact_div``."""
    n = len(m)
    if n == 0:
        return Poly.constant(1)
    a = [list(r) for r in m]
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = None
        best = None
        for i in range(k, n):
            x = a[i][k]
            if x:
                deg = x.degree if isinstance(x, Poly) else 0
                if best is None or deg < best:
                    best, piv = deg, i
        if piv is None:
            return a[0][0] * 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                v = akk * a[i][j] - aik * a[k][j]
                if prev is not None:
                    v = v.exact_div(prev) if isinstance(v, Poly) else v / prev
                a[i][j] = v
            a[i][k] = akk * 0
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _field_det(a):
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def _row_echelon(a):
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [list(r) for r in a]
    if not a:
        return [], []
    n, m = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return a[:r], pivots
