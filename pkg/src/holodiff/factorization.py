"""Factorisation of invertible Laurent-series matrices as (integral unit) x (Laurent polynomial).

Given ``B`` as truncated series we find ``A`` with power-series entries
and unit determinant and an exact Laurent-polynomial ``C`` with ``B = A C``
certified through absolute order ``N``.  Principal parts in ``C`` cost
precision, so ``B`` usually has to be known a few terms beyond ``N``;
:func:`factor_rational` expands exact input as far as needed.

Steps: integral row operations bring ``B`` to upper-triangular form
``U = X B``; the diagonal is split as ``U = U1 * diag(pi**k)`` with ``U1``
unipotent; further integral row operations remove the power-series part of
every entry of ``U1`` above the diagonal, leaving exact principal parts.
That matrix times ``diag(pi**k)`` is ``C``, and ``A = B C^{-1}``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .arith.laurent import LaurentTrunc, laurent_expand
from .errors import InsufficientPrecision, SingularInput


@dataclass
class BirkhoffFactors:
    A: list
    C: list
    exponents: tuple  # diagonal exponents k_j; sum is val(det B)


def _sign(perm):
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def series_det(M, point):
    """Determinant by the Leibniz formula (sizes up to 4 or 5), no divisions."""
    n = len(M)
    total = LaurentTrunc.zero(point)
    for perm in permutations(range(n)):
        term = LaurentTrunc.monomial(point, 0, _sign(perm))
        for i, j in enumerate(perm):
            term = term * M[i][j]
        total = total + term
    return total


def matmul(X, Y, point):
    n, m, k = len(X), len(Y[0]), len(Y)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = LaurentTrunc.zero(point)
            for t in range(k):
                if not X[i][t].is_zero() and not Y[t][j].is_zero():
                    s = s + X[i][t] * Y[t][j]
            row.append(s)
        out.append(row)
    return out


def _unipotent_upper_inverse(U, point):
    """Inverse of an exact unipotent upper-triangular matrix (finite back substitution)."""
    n = len(U)
    inv = [[LaurentTrunc.one(point) if i == j else LaurentTrunc.zero(point) for j in range(n)]
           for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            s = LaurentTrunc.zero(point)
            for k in range(i + 1, j + 1):
                s = s + U[i][k] * inv[k][j]
            inv[i][j] = -s
    return inv


def as_series_matrix(entries, point, N):
    """Expand rational functions (series pass through) modulo ``pi**N``."""
    from .arith.ratfunc import as_ratfunc

    out = []
    for row in entries:
        r = []
        for x in row:
            if isinstance(x, LaurentTrunc):
                r.append(x.truncate(N))
                continue
            f = as_ratfunc(x)
            if f.is_zero():
                r.append(LaurentTrunc.zero(point))
                continue
            v = f.valuation_at(point)
            if v >= N:
                r.append(LaurentTrunc.zero(point, N))
            else:
                r.append(laurent_expand(f, point, N - v))
        out.append(r)
    return out


def birkhoff_factor(B, N, point=None):
    """Factor ``B`` (square list of :class:`LaurentTrunc`) as ``A * C`` through absolute order ``N``.

    Entries keep their own precision (exact entries with several terms are
    cut at the largest precision present, at least ``N``); if the
    product ``A * C`` cannot be certified through ``N`` the call raises
    :class:`InsufficientPrecision`.
    """
    n = len(B)
    if n == 0 or any(len(r) != n for r in B):
        raise ValueError("birkhoff_factor needs a square matrix")
    if point is None:
        point = B[0][0].point
    point = Fraction(point)
    cap = max([N] + [x.precision for r in B for x in r if x.precision is not None])
    B = [[x.truncate(cap) if x.precision is None and len(x.coefficients) > 1 else x for x in r] for r in B]
    det = series_det(B, point)
    if det.is_zero_trunc():
        raise SingularInput("determinant vanishes through the truncation order")

    U = [list(r) for r in B]
    for j in range(n):
        best = None
        for i in range(j, n):
            x = U[i][j]
            if not x.is_zero_trunc():
                v = x.valuation
                if best is None or v < best[0]:
                    best = (v, i)
        if best is None:
            raise InsufficientPrecision(f"no certified pivot in column {j}")
        _, i = best
        U[i], U[j] = U[j], U[i]
        piv = U[j][j]
        for i in range(j + 1, n):
            x = U[i][j]
            if x.is_zero():
                continue
            f = x / piv
            U[i] = [a - f * b for a, b in zip(U[i], U[j])]
            U[i][j] = LaurentTrunc.zero(point)

    exps = []
    for j in range(n):
        k, unit = U[j][j].unit_part()
        exps.append(k)
        uinv = unit.inverse()
        # U1 = row-normalised U times diag(pi^-k): unit diagonal
        U[j] = [x * uinv for x in U[j]]
    U1 = [[U[i][j].shift_exponent(-exps[j]) if j > i else
           (LaurentTrunc.one(point) if i == j else LaurentTrunc.zero(point))
           for j in range(n)] for i in range(n)]

    for i in range(n - 2, -1, -1):
        for j in range(i + 1, n):
            g, f = U1[i][j].split()
            if f.is_zero():
                U1[i][j] = g
                continue
            if f.precision is not None and f.precision <= 0:
                raise InsufficientPrecision("entry lost all nonnegative coefficients")
            U1[i] = [a - f * b if k > j else a for k, (a, b) in enumerate(zip(U1[i], U1[j]))]
            U1[i][j] = g
    C = [[U1[i][j].shift_exponent(exps[j]) for j in range(n)] for i in range(n)]
    Cinv = [[x.shift_exponent(-exps[i]) for x in row]
            for i, row in enumerate(_unipotent_upper_inverse(U1, point))]
    A = matmul(B, Cinv, point)
    for row in A:
        for x in row:
            if not x.is_zero_trunc() and x.valuation < 0:
                raise InsufficientPrecision("integral factor has a negative exponent")
            if x.precision is not None and x.precision <= 0:
                raise InsufficientPrecision("integral factor is not determined at this order")
    for i, row in enumerate(matmul(A, C, point)):
        for j, x in enumerate(row):
            if x.precision is not None and x.precision < N:
                raise InsufficientPrecision(
                    f"product is determined only through order {x.precision} < {N}; supply more terms")
            if not x.agrees(B[i][j]):
                raise AssertionError("factorisation does not reproduce the input")
    return BirkhoffFactors(A, C, tuple(exps))


def factor_rational(entries, N, point=0, max_guard=64):
    """Factor a matrix of rational functions, expanding a growing number of guard terms past ``N``."""
    guard = 0
    while True:
        B = as_series_matrix(entries, point, N + guard)
        try:
            return birkhoff_factor(B, N, point)
        except InsufficientPrecision:
            if guard >= max_guard:
                raise
            guard = max(2, 2 * guard)
