"""d-connections, lattices, zero/pole profiles and austere reduction.

Coordinate convention: ``T`` acts on coordinate vectors by
``v(z) -> A(z-1) v(z-1)``, so the shifted lattice ``T L`` is generated by
``A(z-1) G(z-1)`` and the comparison matrix is ``C_L = G^{-1} A(z-1) G(z-1)``.
Positive local exponents of ``C_L`` are zeroes of ``L``, negative ones poles.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith.matrix import PolyMatrix, RatFuncMatrix
from .arith.normal_forms import (
    hermite_column_form,
    local_elementary_divisors,
    polynomial_matrix_kernel,
)
from .arith.poly import Poly
from .arith.rat import frac_part
from .arith.ratfunc import RatFunc
from .arith.roots import collect_roots
from .errors import SingularMatrix, UnsupportedPoint
from .stalks import LocalLattice, local_rows


def _singular_roots(M):
    """Rational roots of the denominators of ``M`` and of the numerator of ``det M``, plus an irrationality flag."""
    H, d = M.clear_denominators()
    det = H.det()
    if det.is_zero():
        raise SingularMatrix("matrix is singular")
    return collect_roots([d, det])


class DConnection:
    """Invertible rational matrix ``A(z)``; ``T`` sends ``v(z)`` to ``A(z-1) v(z-1)``."""

    def __init__(self, A):
        if not isinstance(A, RatFuncMatrix):
            A = RatFuncMatrix(A.tolist() if hasattr(A, "tolist") else A)
        if not A.is_square() or A.rows == 0:
            raise ValueError("connection matrix must be square and nonempty")
        if A.det().is_zero():
            raise SingularMatrix("connection matrix has zero determinant")
        self.A = A
        self.rank = A.rows
        self._inv = None
        self._fwd = {}
        self._bwd = {}
        self._sing = None
        self._local = {}
        self._steps = {}

    def __eq__(self, other):
        return isinstance(other, DConnection) and self.A == other.A

    def __hash__(self):
        return hash(self.A)

    def __repr__(self):
        return f"DConnection({self.A})"

    @property
    def inverse_matrix(self):
        if self._inv is None:
            self._inv = self.A.inverse()
        return self._inv

    def forward_at(self, a):
        """``A(a + pi)``: carries the stalk at ``a`` to the stalk of the shift at ``a + 1``."""
        a = Fraction(a)
        m = self._fwd.get(a)
        if m is None:
            m = self._fwd[a] = self.A.shift(a)
        return m

    def backward_at(self, a):
        """``A(a - 1 + pi)^{-1}``: carries the stalk at ``a`` to the stalk of the inverse shift at ``a - 1``."""
        a = Fraction(a)
        m = self._bwd.get(a)
        if m is None:
            m = self._bwd[a] = self.inverse_matrix.shift(a - 1)
        return m

    def singular_points(self):
        """``(rational points, irrational flag)`` where ``A`` or ``A^{-1}`` is not regular."""
        if self._sing is None:
            self._sing = _singular_roots(self.A)
        return self._sing

    def gauge(self, B):
        """Connection of the coordinates ``w`` with ``v = B w``: ``B(z)^{-1} A(z) B(z-1)`` up to reindexing.

        With our convention ``T w(z) = B(z)^{-1} A(z-1) B(z-1) w(z-1)``, so the
        new matrix is ``B(z+1)^{-1} A(z) B(z)``.
        """
        B = RatFuncMatrix(B.tolist()) if not isinstance(B, RatFuncMatrix) else B
        return DConnection(B.shift(1).inverse() * self.A * B)

    def involution(self):
        """Connection after ``z -> -z``, ``T -> T^{-1}``: ``A(-z-1)^{-1}``."""
        return DConnection(self.A.reflect().shift(1).inverse())

    def _step_matrix(self, a, direction):
        key = (a, direction)
        rows = self._local.get(key)
        if rows is None:
            M = self.forward_at(a) if direction > 0 else self.backward_at(a)
            rows = self._local[key] = local_rows(M)
        return rows

    def _step(self, stalk, direction):
        # memoised: restriction and gluing revisit the same stalks many times
        key = (stalk.key(), direction)
        out = self._steps.get(key)
        if out is None:
            out = stalk.transform(self._step_matrix(stalk.point, direction), stalk.point + direction)
            self._steps[key] = out
        return out

    def transport(self, stalk, steps):
        """Stalk of ``T^steps L`` at ``stalk.point + steps`` given the stalk of ``L`` at ``stalk.point``."""
        s = stalk
        direction = 1 if steps >= 0 else -1
        for _ in range(abs(steps)):
            s = self._step(s, direction)
        return s


class Lattice:
    """Full-rank lattice: the span of a base matrix with some stalks replaced.

    ``overrides`` maps rational points to :class:`LocalLattice` stalks that
    replace the base stalk there; everywhere else the stalk is that of
    ``base``.  ``generators`` materialises a single global matrix.
    """

    def __init__(self, base, overrides=None):
        if not isinstance(base, RatFuncMatrix):
            base = RatFuncMatrix(base.tolist() if hasattr(base, "tolist") else base)
        if not base.is_square():
            raise ValueError("lattice generators must be square")
        self.base = base
        self.rank = base.rows
        self.overrides = dict(overrides or {})
        self._gens = None if self.overrides else base
        self._stalks = dict(self.overrides)
        self._sing = None

    @classmethod
    def standard(cls, n):
        return cls(RatFuncMatrix.identity(n))

    def __repr__(self):
        return f"Lattice({self.generators})"

    def stalk(self, a):
        a = Fraction(a)
        s = self._stalks.get(a)
        if s is None:
            s = self._stalks[a] = LocalLattice.from_global(self.base, a)
        return s

    def with_stalks(self, stalks):
        """Same lattice with the stalks at the given points replaced."""
        merged = dict(self.overrides)
        for a, s in stalks.items():
            if s.point != Fraction(a):
                raise ValueError("stalk point mismatch")
            merged[Fraction(a)] = s
        out = Lattice(self.base, merged)
        for a, s in self._stalks.items():
            if a not in merged:
                out._stalks[a] = s
        out._sing = None
        return out

    def base_points(self):
        """Rational points where the base span differs from the standard lattice."""
        if self._sing is None:
            self._sing = _singular_roots(self.base)
        return self._sing

    def special_points(self):
        """Rational points where this lattice may differ from the standard one."""
        pts, _ = self.base_points()
        return set(pts) | set(self.overrides)

    @property
    def generators(self):
        """A global generator matrix (materialised on first use)."""
        if self._gens is None:
            G = self.base
            for b in sorted(self.overrides):
                G = _replace_stalk(G, b, self.overrides[b])
            self._gens = _normalize(G)
        return self._gens

    def materialized(self):
        return Lattice(self.generators)

    def transition(self, other):
        return self.generators.inverse() * other.generators

    def contains(self, other):
        """Span containment ``other`` inside ``self``."""
        return self.transition(other).is_polynomial()

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        if self.rank != other.rank:
            return False
        X = self.transition(other)
        if not X.is_polynomial():
            return False
        return X.det().is_poly() and X.det().num.is_constant()

    def __hash__(self):
        return hash(self.rank)

    def reflect(self):
        """The lattice ``G(-z)`` (stalk at ``a`` moves to ``-a``)."""
        return Lattice(self.base.reflect(), {-a: s.reflect() for a, s in self.overrides.items()})


def _normalize(G):
    """Canonical global generators: lower-triangular column Hermite form over Q[z], divided by the common denominator."""
    H, d = G.clear_denominators()
    Hn = hermite_column_form(H)
    inv = RatFunc(Poly.constant(1), d)
    return Hn.to_ratfunc().map(lambda f: f * inv)


def _replace_stalk(G, b, target):
    """Global matrix equal to ``G`` away from ``b`` with stalk ``target`` at ``b``."""
    X = G.shift(b).inverse() * target.H
    T = LocalLattice(b, X).H
    return G * T.shift(-b)


# -- global operations --------------------------------------------------------

def tau_shift_lattice(conn, L, k=1):
    """``T^k L``: generators ``A(z-1) G(z-1)`` iterated ``k`` times (inverse for negative ``k``)."""
    G = L.generators
    if k >= 0:
        for _ in range(k):
            G = conn.A.shift(-1) * G.shift(-1)
    else:
        Ainv = conn.inverse_matrix
        for _ in range(-k):
            G = Ainv * G.shift(1)
    return Lattice(_normalize(G))


def lattice_sum(L1, L2):
    """Column span of ``[G1 | G2]`` over Q[z], as a square generator matrix."""
    if L1.rank != L2.rank:
        raise ValueError("rank mismatch")
    M = L1.generators.hstack(L2.generators)
    H, d = M.clear_denominators()
    Hn = hermite_column_form(H)
    inv = RatFunc(Poly.constant(1), d)
    return Lattice(Hn.to_ratfunc().map(lambda f: f * inv))


def lattice_intersection(L1, L2):
    """Intersection of spans through the kernel of ``[G1 | -G2]``."""
    if L1.rank != L2.rank:
        raise ValueError("rank mismatch")
    G1, G2 = L1.generators, L2.generators
    n = L1.rank
    H, _ = G1.hstack(-G2).clear_denominators()
    Kmat = polynomial_matrix_kernel(H)
    top = Kmat.submatrix(range(n), range(Kmat.cols)).to_ratfunc()
    gens = G1 * top
    Hc, d = gens.clear_denominators()
    Hn = hermite_column_form(Hc)
    inv = RatFunc(Poly.constant(1), d)
    return Lattice(Hn.to_ratfunc().map(lambda f: f * inv))


def comparison_matrix(conn, L):
    """``C_L = G(z)^{-1} A(z-1) G(z-1)``."""
    G = L.generators
    if G.det().is_zero():
        raise SingularMatrix("lattice generators are singular")
    return G.inverse() * conn.A.shift(-1) * G.shift(-1)


@dataclass(frozen=True)
class ZeroPoleProfile:
    """Nonzero local exponents of the comparison matrix, per point."""

    exponents: dict

    @property
    def zeroes(self):
        return sorted(a for a, e in self.exponents.items() if any(x > 0 for x in e))

    @property
    def poles(self):
        return sorted(a for a, e in self.exponents.items() if any(x < 0 for x in e))

    def points(self):
        return sorted(self.exponents)

    def on_orbit(self, p):
        p = Fraction(p)
        return ZeroPoleProfile({a: e for a, e in self.exponents.items() if frac_part(a - p) == 0})

    def is_austere(self):
        return is_austere(self.zeroes, self.poles)

    def __bool__(self):
        return bool(self.exponents)


def is_austere(zeroes, poles):
    """No pole lies a positive integer to the right of a zero."""
    for b in poles:
        for a in zeroes:
            d = b - a
            if d > 0 and d.denominator == 1:
                return False
    return True


def zero_pole_profile(conn, L):
    """Profile from the global comparison matrix; irrational singular points raise ``UnsupportedPoint``."""
    C = comparison_matrix(conn, L)
    pts, irrational = _singular_roots(C)
    if irrational:
        raise UnsupportedPoint("comparison matrix has irrational singular points")
    out = {}
    for a in sorted(pts):
        e = [x for x in local_elementary_divisors(C, a) if x]
        if e:
            out[a] = e
    return ZeroPoleProfile(out)


def _candidates(conn, L, p):
    """Orbit points where ``C_L`` can fail to be a local unit."""
    sL = L.special_points()
    sA, _ = conn.singular_points()
    pts = set(sL) | {a + 1 for a in sL} | {a + 1 for a in sA}
    p = Fraction(p)
    return sorted(a for a in pts if frac_part(a - p) == 0)


def local_exponents(conn, L, b):
    """Nonzero local exponents of ``C_L`` at ``b`` from the stalks at ``b - 1`` and ``b``."""
    b = Fraction(b)
    src = L.stalk(b - 1)
    return [x for x in L.stalk(b).map_divisors(conn._step_matrix(b - 1, 1), src) if x]


def orbit_profile(conn, L, p):
    """Profile restricted to the orbit ``p + Z``, computed from stalks only."""
    out = {}
    for b in _candidates(conn, L, p):
        e = local_exponents(conn, L, b)
        if e:
            out[b] = e
    return ZeroPoleProfile(out)


def singular_orbits(conn, L):
    """Canonical representatives of the orbits meeting the profile."""
    prof = zero_pole_profile(conn, L)
    return sorted({frac_part(a) for a in prof.exponents})


def orbits_of_points(points):
    return sorted({frac_part(a) for a in points})


# -- austere lattices ---------------------------------------------------------

@dataclass
class AustereResult:
    lattice: Lattice
    trace: list  # (iteration, orbit profile, lattice) triples
    iterations: int
    bound: int


def austere_bound(profile):
    """Iteration bound ``max pole - min zero + 1`` (0 when already separated)."""
    if profile.is_austere():
        return 0
    return int(max(profile.poles) - min(profile.zeroes)) + 1


def austere_reduce_trace(conn, L, orbit):
    """Iterate ``W -> T^{-1} W ∩ W`` on the orbit until poles sit left of all zeroes."""
    p = Fraction(orbit)
    W = L
    prof = orbit_profile(conn, W, p)
    bound = austere_bound(prof)
    trace = [(0, prof, W)]
    it = 0
    while not prof.is_austere():
        it += 1
        if it > bound:
            raise AssertionError(f"austere reduction exceeded its bound {bound}")
        new = {}
        for b in prof.poles:
            c = b - 1
            pulled = conn.transport(W.stalk(b), -1)
            new[c] = W.stalk(c) & pulled
        W = W.with_stalks(new)
        prof = orbit_profile(conn, W, p)
        trace.append((it, prof, W))
    return AustereResult(W, trace, it, bound)


def austere_reduce(conn, L, orbit):
    return austere_reduce_trace(conn, L, orbit).lattice


def intermediate_extension(conn, L, orbit):
    """Austere stalks on the orbit, the stalks of ``L`` elsewhere."""
    return austere_reduce(conn, L, orbit)


def standard_lattice(n):
    return Lattice(PolyMatrix.identity(n).to_ratfunc())
