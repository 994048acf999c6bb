"""Deterministic generators of test connections, lattices and gauges."""

from fractions import Fraction

from holodiff.arith.matrix import PolyMatrix, RatFuncMatrix
from holodiff.arith.poly import Poly
from holodiff.arith.ratfunc import RatFunc
from holodiff.factorization import matmul, series_det
from holodiff.lattices import DConnection, Lattice

Z = Poly.z()
HALF = Fraction(1, 2)


def lin(r):
    return Z - Fraction(r)


def unimodular(rng, n, deg=1):
    """Product of an upper and a lower unipotent polynomial matrix, times a permutation-free scaling."""
    up = [[Poly.constant(1) if i == j else Poly() for j in range(n)] for i in range(n)]
    lo = [[Poly.constant(1) if i == j else Poly() for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i < j:
                up[i][j] = Poly([rng.randint(-2, 2) for _ in range(deg + 1)])
            elif i > j:
                lo[i][j] = Poly([rng.randint(-2, 2) for _ in range(rng.randint(1, deg + 1))])
    scale = [Fraction(rng.choice([1, -1, 2, -2, 3])) for _ in range(n)]
    U = PolyMatrix(up) * PolyMatrix(lo)
    return U * PolyMatrix.diag(scale)


def orbit_points(rng, orbits=(Fraction(0), HALF), spread=2):
    return rng.choice(orbits) + rng.randint(-spread, spread)


def diagonal_factor(rng, orbits=(Fraction(0), HALF), max_factors=2, spread=2):
    f = RatFunc.constant(rng.choice([1, 2, -1, Fraction(1, 2)]))
    for _ in range(rng.randint(0, max_factors)):
        r = orbit_points(rng, orbits, spread)
        e = rng.choice([1, -1])
        f = f * RatFunc.from_poly(lin(r)) ** e
    return f


def random_connection(rng, n, orbits=(Fraction(0), HALF), max_factors=2, spread=2, deg=1):
    """``U1 * diag(...) * U2`` with unimodular ``U1, U2``; all singular points lie on the given orbits."""
    D = RatFuncMatrix.diag([diagonal_factor(rng, orbits, max_factors, spread) for _ in range(n)])
    U1 = unimodular(rng, n, deg).to_ratfunc()
    U2 = unimodular(rng, n, deg).to_ratfunc()
    return DConnection(U1 * D * U2)


def random_lattice(rng, n, orbits=(Fraction(0), HALF), spread=2):
    """A lattice ``U * diag((z - r)^{e})`` with points on the orbits."""
    D = RatFuncMatrix.diag([
        RatFunc.from_poly(lin(orbit_points(rng, orbits, spread))) ** rng.choice([-1, 0, 1])
        for _ in range(n)])
    U = unimodular(rng, n, 1).to_ratfunc()
    return Lattice(U * D)


def sublattice(rng, L, orbits=(Fraction(0), HALF), colength=3, spread=2):
    """``L' = L * M`` with ``M`` integral of determinant degree ``<= colength``."""
    n = L.rank
    out = L.generators
    for _ in range(rng.randint(1, colength)):
        r = orbit_points(rng, orbits, spread)
        j = rng.randrange(n)
        d = [RatFunc.constant(1)] * n
        d[j] = RatFunc.from_poly(lin(r))
        V = unimodular(rng, n, 1).to_ratfunc()
        out = out * V * RatFuncMatrix.diag(d)
    return Lattice(out)


def local_gauge(rng, n, avoid_orbits=(Fraction(0), HALF)):
    """Gauge matrix regular and invertible along the given orbits: unimodular times factors at other points."""
    U = unimodular(rng, n, 1).to_ratfunc()
    d = []
    for _ in range(n):
        r = Fraction(rng.choice([1, 2]), 3) + rng.randint(-1, 1)
        d.append(RatFunc.from_poly(lin(r)) ** rng.choice([-1, 0, 1]))
    return U * RatFuncMatrix.diag(d)


def max_degree(M):
    """Largest numerator or denominator degree among the entries."""
    return max(max(f.num.degree, f.den.degree) for r in M.tolist() for f in r)


def stalk_of_module(conn, L, a, K):
    """Stalk at ``a`` of ``sum_{|k|<=K} T^k L``."""
    a = Fraction(a)
    S = L.stalk(a)
    for k in range(1, K + 1):
        S = S + conn.transport(L.stalk(a - k), k) + conn.transport(L.stalk(a + k), -k)
    return S


def certify_inside_module(conn, L, sub, K):
    """True when every stalk of ``L`` lies in ``sum_{|k|<=K} T^k sub`` (so ``L`` lies in the module of ``sub``)."""
    for a in L.special_points() | sub.special_points():
        if L.stalk(a) != sub.stalk(a) and not stalk_of_module(conn, sub, a, K).contains(L.stalk(a)):
            return False
    return True


def same_module(conn, L1, L2, K):
    """Certificate that two lattices generate the same difference module."""
    return certify_inside_module(conn, L1, L2, K) and certify_inside_module(conn, L2, L1, K)


# -- factorable series matrices ------------------------------------------------------------

def _rf(num, den=(1,)):
    return RatFunc(Poly(list(num)), Poly(list(den)))


def pi_pow(k):
    return RatFunc(Poly.monomial(k)) if k >= 0 else RatFunc(Poly.constant(1), Poly.monomial(-k))


def random_integral_unit(rng, n, point=0):
    """Rational entries regular at the point, triangular with unit diagonal entries."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(_rf([rng.choice([1, 2, -1, 3]), rng.randint(-2, 2)], [1, rng.randint(-2, 2)]))
            elif i > j:
                row.append(_rf([rng.randint(-2, 2), rng.randint(-2, 2)], [1, rng.randint(-2, 2)]))
            else:
                row.append(_rf([rng.randint(-2, 2)]))
        rows.append(row)
    M = RatFuncMatrix(rows)
    return M.shift(-Fraction(point)) if point else M


def random_laurent_poly_matrix(rng, n, point=0):
    """Permutation times diag(pi^k) times a unipotent Laurent-polynomial matrix."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[RatFunc.constant(0)] * n for _ in range(n)]
    for i in range(n):
        rows[perm[i]][i] = pi_pow(rng.randint(-2, 2))
    U = [[RatFunc.constant(1) if i == j else
          (RatFunc(Poly([rng.randint(-2, 2), rng.randint(-1, 1)]), Poly.monomial(rng.randint(0, 2)))
           if i < j else RatFunc.constant(0))
          for j in range(n)] for i in range(n)]
    M = RatFuncMatrix(rows) * RatFuncMatrix(U)
    return M.shift(-Fraction(point)) if point else M


def check_factorization(B, res, point, order):
    """All post-conditions of an integral-times-Laurent-polynomial factorization; asserts on failure."""
    n = len(B)
    P = matmul(res.A, res.C, point)
    for i in range(n):
        for j in range(n):
            assert P[i][j].precision is None or P[i][j].precision >= order
            assert P[i][j].agrees(B[i][j])
            a = res.A[i][j]
            assert a.is_zero_trunc() or a.valuation >= 0
            assert res.C[i][j].is_exact()
    detA = series_det(res.A, point)
    assert not detA.is_zero_trunc() and detA.valuation == 0
    detC = series_det(res.C, point)
    assert detC.is_exact() and len(detC.coefficients) == 1
    detB = series_det(B, point)
    assert detA.valuation + detC.valuation == detB.valuation
    assert sum(res.exponents) == detB.valuation
