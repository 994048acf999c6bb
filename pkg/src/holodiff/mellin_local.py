"""Local Mellin transform at a finite orbit and the truncated ``Q((T)) ⊗ N`` models.

A regular-singular module is given by a constant matrix ``C`` (the action of
``x D`` on a lattice basis).  Its local transform at the orbit ``p + Z`` is
the finite-length module whose partition lists the Jordan block sizes of
``C`` at eigenvalues in ``p + Z``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith.matrix import QMatrix
from .arith.rat import frac_part
from .arith.roots import root_data
from .errors import IrrationalEigenvalue, WindowTooSmall
from .restriction import FiniteLengthModule


@dataclass(frozen=True)
class RegSingModule:
    """``x D`` acting by the constant matrix ``C``."""

    C: QMatrix

    def __post_init__(self):
        if not isinstance(self.C, QMatrix):
            object.__setattr__(self, "C", QMatrix(self.C))

    @property
    def dimension(self):
        return self.C.rows


def _rank_sequence(M, limit):
    """``rank(M^k)`` for ``k = 0..limit``."""
    ranks = [M.rows]
    P = QMatrix.identity(M.rows)
    for _ in range(limit):
        P = P * M
        ranks.append(P.rank())
        if ranks[-1] == ranks[-2]:
            break
    return ranks


def jordan_sizes(M, lam):
    """Sizes of the Jordan blocks of ``M`` at eigenvalue ``lam`` (decreasing)."""
    n = M.rows
    S = M - QMatrix.diag([lam] * n) if n else M
    r = _rank_sequence(S, n)
    while len(r) < n + 2:
        r.append(r[-1])
    # blocks of size >= k: r[k-1] - r[k]
    ge = [r[k - 1] - r[k] for k in range(1, n + 2)]
    sizes = []
    for k in range(1, n + 1):
        count = ge[k - 1] - ge[k]
        sizes.extend([k] * count)
    return sorted(sizes, reverse=True)


def _eigenvalues(C):
    if C.rows == 0:
        return {}
    roots, irrational = root_data(C.charpoly())
    if irrational:
        raise IrrationalEigenvalue("characteristic polynomial has an irreducible factor of degree >= 2")
    return roots


def local_mellin(F, orbit):
    """Jordan block sizes of ``C`` at eigenvalues in ``orbit + Z``."""
    C = F.C if isinstance(F, RegSingModule) else QMatrix(F)
    p = Fraction(orbit)
    parts = []
    for lam in sorted(_eigenvalues(C)):
        if frac_part(lam - p) == 0:
            parts.extend(jordan_sizes(C, lam))
    return FiniteLengthModule(tuple(parts), p)


def local_mellin_infinity(F, orbit):
    """Transform at infinity: the involution ``x -> 1/x`` negates ``C``, then ``local_mellin``."""
    C = F.C if isinstance(F, RegSingModule) else QMatrix(F)
    return local_mellin(RegSingModule(-C), orbit)


# -- truncated models ------------------------------------------------------------

def nilpotent_of(N):
    """Matrix of ``pi`` on ``⊕ Q[pi]/pi^k`` in the basis ``pi^s e_t`` (block by block)."""
    dim = N.length
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    off = 0
    for k in N.partition:
        for s in range(k - 1):
            rows[off + s + 1][off + s] = Fraction(1)
        off += k
    return QMatrix(rows, dim, dim)


@dataclass(frozen=True)
class TruncatedTauModule:
    """``sum_{|k|<=K} T^k ⊗ N`` with ``z`` acting on ``T^k ⊗ N`` as ``p + k + pi``."""

    base: FiniteLengthModule
    orbit: Fraction
    window: int
    z_action: QMatrix
    tau_action: QMatrix

    @property
    def dimension(self):
        return self.z_action.rows


def iota_lower_shriek(N, orbit, K):
    if K < 1:
        raise ValueError("window must be at least 1")
    p = Fraction(orbit)
    d = N.length
    blocks = 2 * K + 1
    dim = d * blocks
    pi = nilpotent_of(N)
    Z = [[Fraction(0)] * dim for _ in range(dim)]
    Tm = [[Fraction(0)] * dim for _ in range(dim)]
    for b, k in enumerate(range(-K, K + 1)):
        o = b * d
        for i in range(d):
            Z[o + i][o + i] = p + k
            for j in range(d):
                if pi[i, j]:
                    Z[o + i][o + j] += pi[i, j]
            if b + 1 < blocks:
                Tm[o + d + i][o + i] = Fraction(1)
    return TruncatedTauModule(N, p, K, QMatrix(Z, dim, dim), QMatrix(Tm, dim, dim))


def _torsion_at(M, p):
    if M.dimension == 0:
        return ()
    return tuple(jordan_sizes(M.z_action, p))


def iota_upper_shriek(M, orbit=None, certify=True):
    """Partition of the ``(z - p)``-power torsion, ``pi`` acting as ``z - p``."""
    p = M.orbit if orbit is None else Fraction(orbit)
    parts = _torsion_at(M, p)
    if certify:
        bigger = iota_lower_shriek(M.base, M.orbit, M.window + 4)
        if _torsion_at(bigger, p) != parts:
            raise WindowTooSmall("torsion at p changes when the window grows")
    return FiniteLengthModule(parts, p)


# -- Hom(D/DQ, Q((T)) ⊗ N) -----------------------------------------------------------

def _poly_on_module(P, c, N, pi):
    """Matrix of ``P(c + pi)`` acting on ``N``."""
    coeffs = P.shift(c).coefficients
    d = N.length
    out = QMatrix.zeros(d, d)
    power = QMatrix.identity(d)
    for a in coeffs:
        if a:
            out = out + power.map(lambda x, a=a: x * a, QMatrix)
        power = power * pi
    return out


def _solution_dimension(Q, N, p, K):
    Qn = Q.normalized()
    lo, hi = Qn.tau_range
    d = N.length
    if d == 0:
        return 0
    pi = nilpotent_of(N)
    idx = {k: (k + K) * d for k in range(-K, K + 1)}
    dim = (2 * K + 1) * d
    rows = []
    for j in range(-K, K + 1):
        block = [[Fraction(0)] * dim for _ in range(d)]
        for i in range(lo, hi + 1):
            P = Qn.coefficient(i)
            k = j - i
            if not P or k not in idx:
                continue
            Mx = _poly_on_module(P, p + j, N, pi)
            o = idx[k]
            for r in range(d):
                for c in range(d):
                    block[r][o + c] += Mx[r, c]
        rows.extend(block)
    return dim - QMatrix(rows, len(rows), dim).rank()


def hom_dimension_oracle(Q, N, orbit, K):
    """Solutions of ``Q v = 0`` in the truncated ``Q((T)) ⊗ N``, certified at ``K + 4``."""
    p = Fraction(orbit)
    a = _solution_dimension(Q, N, p, K)
    b = _solution_dimension(Q, N, p, K + 4)
    if a != b:
        raise WindowTooSmall(f"solution count {a} at window {K} but {b} at {K + 4}")
    return a


def partition_pairing(a, b):
    """``sum min(a_i, b_j)``: dimension of ``Hom`` between two finite-length modules."""
    return sum(min(x, y) for x in a for y in b)
