"""Normal forms over the principal ideal domain Q[z] and its localisations."""

from fractions import Fraction

from ..errors import SingularMatrix
from .matrix import PolyMatrix, RatFuncMatrix
from .poly import Poly
from .ratfunc import RatFunc


def _deg(p):
    return p.degree


def smith_normal_form(M):
    """Smith form ``U*M*V = D`` over Q[z].

    Pivots are minimal-degree entries, ties broken row-major.  ``D`` has
    monic diagonal entries forming a divisibility chain (zeros last).
    """
    if not isinstance(M, PolyMatrix):
        M = PolyMatrix(M.tolist())
    m, n = M.rows, M.cols
    A = M.tolist()
    U = PolyMatrix.identity(m).tolist()
    V = PolyMatrix.identity(n).tolist()

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_addmul(dst, src, q):
        # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_addmul(dst, src, q):
        for r in A:
            r[dst] = r[dst] - q * r[src]
        for r in V:
            r[dst] = r[dst] - q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = A[i][j]
                    if x and (best is None or x.degree < best[0]):
                        best = (x.degree, i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = A[i][t].divmod(piv)
                    row_addmul(i, t, q)
                    if r:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = A[t][j].divmod(piv)
                    col_addmul(j, t, q)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] and not (A[i][j] % piv).is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # bring an offending row into the pivot row and repeat
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if A[t][t]:
            c = A[t][t].lc
            if c != 1:
                inv = 1 / c
                A[t] = [a * inv for a in A[t]]
                U[t] = [a * inv for a in U[t]]
        else:
            break
    return PolyMatrix(U), PolyMatrix(A), PolyMatrix(V)


def polynomial_matrix_kernel(M):
    """A Q[z]-basis of ``{v : M v = 0}`` as the columns of a matrix."""
    if not isinstance(M, PolyMatrix):
        M = PolyMatrix(M.tolist())
    _, D, V = smith_normal_form(M)
    r = sum(1 for t in range(min(D.rows, D.cols)) if D[t, t])
    cols = list(range(r, M.cols))
    return V.submatrix(range(M.cols), cols)


def hermite_column_form(M):
    """Column Hermite form of a full-row-rank polynomial matrix.

    Returns the square lower-triangular generator of the column span: monic
    diagonal, entries left of the diagonal of smaller degree than it.
    """
    n, m = M.rows, M.cols
    A = M.tolist()

    def col_addmul(dst, src, q):
        for r in A:
            r[dst] = r[dst] - q * r[src]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]

    for i in range(n):
        while True:
            nz = [j for j in range(i, m) if A[i][j]]
            if not nz:
                raise SingularMatrix("generators do not have full row rank")
            jmin = min(nz, key=lambda j: (A[i][j].degree, j))
            if jmin != i:
                col_swap(jmin, i)
            piv = A[i][i]
            others = [j for j in range(i + 1, m) if A[i][j]]
            if not others:
                break
            for j in others:
                q = A[i][j] // piv
                col_addmul(j, i, q)
        c = A[i][i].lc
        if c != 1:
            inv = 1 / c
            for r in A:
                r[i] = r[i] * inv
        for j in range(i):
            if A[i][j] and A[i][j].degree >= A[i][i].degree:
                q = A[i][j] // A[i][i]
                col_addmul(j, i, q)
    return PolyMatrix([row[:n] for row in A])


def _val0(f):
    """Valuation at 0 of a nonzero rational function in pi."""
    return f.num.low_valuation() - f.den.low_valuation()


def local_divisors_at_zero(rows):
    """Local elementary divisors at ``pi = 0`` of a square matrix of RatFunc entries in ``pi``."""
    A = [list(r) for r in rows]
    n = len(A)
    out = []
    for t in range(n):
        best = None
        for i in range(t, n):
            for j in range(t, n):
                x = A[i][j]
                if x:
                    v = _val0(x)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise SingularMatrix("matrix is singular")
        v, i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        piv = A[t][t]
        for i in range(t + 1, n):
            if A[i][t]:
                f = A[i][t] / piv
                A[i] = [a - f * b if k > t else a for k, (a, b) in enumerate(zip(A[i], A[t]))]
                A[i][t] = RatFunc.constant(0)
        out.append(v)
    return out


def local_elementary_divisors(M, a):
    """Sorted exponents ``d_i`` with ``M ~ diag((z-a)^d_i)`` over the local ring at ``a``."""
    if not isinstance(M, RatFuncMatrix):
        M = RatFuncMatrix(M.tolist())
    if not M.is_square():
        raise ValueError("local elementary divisors need a square matrix")
    a = Fraction(a)
    H, d = M.clear_denominators()
    if H.det().is_zero():
        raise SingularMatrix("local elementary divisors of a singular matrix")
    vd = d.valuation_at(a)
    rows = [[RatFunc.from_poly(x.shift(a)) for x in r] for r in H.tolist()]
    return sorted(v - vd for v in local_divisors_at_zero(rows))


def poly_matrix_content_gcd(H):
    """Monic gcd of all entries of a polynomial matrix."""
    g = Poly()
    for r in H.tolist():
        for x in r:
            if x:
                g = g.gcd(x) if g else x.monic()
                if g.is_constant():
                    return Poly.constant(1)
    return g
