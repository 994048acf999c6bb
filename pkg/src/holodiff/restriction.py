"""Restriction of a difference module to the neighbourhood of one orbit.

Everything here works with stalks at rational points of a single orbit
``p + Z``.  For a lattice ``L`` of a module ``M`` and a stabilisation bound
``K`` the restriction at a point ``q`` of the orbit consists of

* the middle: the stalk of ``sum_{|k|<=K} T^k L`` at ``q`` (the stalk of ``M``),
* the left part: the stalk of ``T^K L`` at ``q``,
* the right part: the stalk of ``T^{-K} L`` at ``q``.

The quotients middle/left and middle/right are the left and right vanishing
cycles.  Torsion modules carry only a partition.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .arith.rat import frac_part
from .arith.roots import roots_in_orbit
from .errors import IncompatibleTriple, MixedCaseUnsupported, RankZero
from .lattices import (
    Lattice,
    is_austere,
    orbit_profile,
    zero_pole_profile,
)
from .skew import companion_connection


@dataclass(frozen=True)
class FiniteLengthModule:
    """``⊕ Q[pi]/pi^k`` for ``k`` in ``partition`` (weakly decreasing), attached to an orbit."""

    partition: tuple
    orbit: Fraction = Fraction(0)

    def __post_init__(self):
        parts = tuple(sorted((int(k) for k in self.partition), reverse=True))
        if any(k < 1 for k in parts):
            raise ValueError("partition parts must be positive")
        object.__setattr__(self, "partition", parts)
        object.__setattr__(self, "orbit", frac_part(self.orbit))

    @property
    def length(self):
        return sum(self.partition)

    def __bool__(self):
        return bool(self.partition)


@dataclass(frozen=True)
class DiskTriple:
    """Restriction ``(left -> middle <- right)`` at ``point``, stored as stalks.

    A torsion module has ``middle is None`` and its data in ``torsion``.
    """

    orbit: Fraction
    point: Fraction
    rank: int
    left: object
    middle: object
    right: object
    torsion: FiniteLengthModule = field(default=None)
    stable_shift: int = 0

    @property
    def is_torsion(self):
        return self.middle is None

    def left_partition(self):
        if self.is_torsion:
            return self.torsion.partition
        return tuple(self.middle.quotient_partition(self.left))

    def right_partition(self):
        if self.is_torsion:
            return self.torsion.partition
        return tuple(self.middle.quotient_partition(self.right))

    def same_as(self, other):
        return (self.point == other.point and self.rank == other.rank and self.left == other.left
                and self.middle == other.middle and self.right == other.right
                and self.torsion == other.torsion)


def _stable_bound(conn, L, q):
    """Smallest ``K`` with every orbit profile point in ``(q-K, q+K)``, plus one."""
    prof = orbit_profile(conn, L, q)
    if not prof:
        return 1
    reach = max(abs(b - q) for b in prof.points())
    return int(reach) + 2


def _restriction_at(conn, L, q, K):
    left = conn.transport(L.stalk(q - K), K)
    right = conn.transport(L.stalk(q + K), -K)
    up = L.stalk(q - K)
    for j in range(-K + 1, 1):
        up = conn.transport(up, 1) + L.stalk(q + j)
    down = L.stalk(q + K)
    for j in range(K - 1, -1, -1):
        down = conn.transport(down, -1) + L.stalk(q + j)
    return left, up + down, right


def restrict_to_orbit(conn, L, orbit, shift=0, check=True):
    """The restriction of the module generated by ``L`` at ``orbit + shift``."""
    p = frac_part(Fraction(orbit))
    q = p + shift
    K = _stable_bound(conn, L, q)
    left, middle, right = _restriction_at(conn, L, q, K)
    if check:
        again = _restriction_at(conn, L, q, K + 1)
        if again != (left, middle, right):
            raise AssertionError("restriction did not stabilise at the computed bound")
    return DiskTriple(p, q, conn.rank, left, middle, right, None, K)


def torsion_partition(f, orbit):
    """Partition of ``D/D f(z)`` at an orbit: root multiplicities of ``f`` on the orbit."""
    mults = roots_in_orbit(f, orbit).values()
    return FiniteLengthModule(tuple(mults), Fraction(orbit))


def torsion_triple(f, orbit):
    mod = torsion_partition(f, orbit)
    p = frac_part(Fraction(orbit))
    return DiskTriple(p, p, 0, None, None, None, mod, 0)


def vanishing_cycles(conn, L, orbit, side="left", method="direct"):
    """Left or right vanishing cycles of the module generated by ``L`` at an orbit."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "right" and method == "involution":
        conn2 = conn.involution()
        L2 = L.reflect()
        return vanishing_cycles(conn2, L2, -Fraction(orbit), "left")
    t = restrict_to_orbit(conn, L, orbit)
    parts = t.left_partition() if side == "left" else t.right_partition()
    return FiniteLengthModule(parts, Fraction(orbit))


def operator_vanishing_cycles(Q, orbit, side="left"):
    """Vanishing cycles of ``D/DQ``, routing rank-zero operators to the torsion description."""
    try:
        conn, L = companion_connection(Q)
    except RankZero:
        f = Q.normalized().coefficient(0)
        return torsion_partition(f, orbit)
    return vanishing_cycles(conn, L, orbit, side)


def _pairing(a, b):
    return sum(min(x, y) for x in a for y in b)


def ext1_dimension(M, N):
    """``dim Ext^1(M, N)`` for a torsion module or a torsion-free triple ``M``.

    Torsion ``M``: ``sum min(a_i, b_j)``.  Torsion-free ``M`` of rank ``n``:
    ``dim Hom(M^l, N) + dim Hom(M^r, N) - dim(image of Hom(M, N))`` which
    equals ``n |N| + sum min(q_i, b_j)`` with ``q`` the partition of
    ``M / (M^l + M^r)``.
    """
    b = N.partition
    if isinstance(M, FiniteLengthModule):
        return _pairing(M.partition, b)
    if M.is_torsion:
        return _pairing(M.torsion.partition, b)
    if M.torsion is not None and M.torsion.partition:
        raise MixedCaseUnsupported("module has both free and torsion parts")
    n = M.rank
    q = M.middle.quotient_partition(M.left + M.right)
    hom_l = n * N.length
    hom_r = n * N.length
    image = n * N.length - _pairing(q, b)
    return hom_l + hom_r - image


# -- gluing ------------------------------------------------------------------

def glue(conn, L, triple):
    """Lattice whose module has restriction ``triple`` on its orbit and agrees with ``L`` elsewhere.

    The left and right parts of ``triple`` must coincide with those of the
    module generated by ``L``; the stalks at ``point + i`` for ``|i| < K``
    are replaced by ``T^i`` of the middle.
    """
    if triple.is_torsion or (triple.torsion is not None and triple.torsion.partition):
        raise MixedCaseUnsupported("gluing is implemented for torsion-free middles")
    q = triple.point
    own = restrict_to_orbit(conn, L, triple.orbit, shift=int(q - triple.orbit))
    if own.left != triple.left or own.right != triple.right:
        raise IncompatibleTriple("left/right parts do not match the punctured module")
    if not (triple.middle.contains(triple.left) and triple.middle.contains(triple.right)):
        raise IncompatibleTriple("middle does not contain the left and right parts")
    K = max(own.stable_shift, triple.stable_shift)
    new = {q: triple.middle}
    s = triple.middle
    for i in range(1, K):
        s = conn.transport(s, 1)
        new[q + i] = s
    s = triple.middle
    for i in range(1, K):
        s = conn.transport(s, -1)
        new[q - i] = s
    return conn, L.with_stalks(new)


def enlarge_middle(triple, steps=1):
    """Triple with the middle replaced by ``pi^{-steps}`` times its first basis vector direction."""
    from .stalks import LocalLattice, pi_power

    H = triple.middle.H
    cols = H.tolist()
    f = pi_power(-steps)
    rows = [[x * f if j == 0 else x for j, x in enumerate(r)] for r in cols]
    bigger = LocalLattice(triple.point, rows)
    return DiskTriple(triple.orbit, triple.point, triple.rank, triple.left, bigger, triple.right,
                      triple.torsion, triple.stable_shift)


def round_trip_check(conn, L, orbit):
    """Restrict, glue back, and compare restrictions and stalks with the original module.

    Also checks restriction after gluing reproduces a modified triple.
    """
    t = restrict_to_orbit(conn, L, orbit)
    _, L2 = glue(conn, L, t)
    t2 = restrict_to_orbit(conn, L2, orbit)
    if not t.same_as(t2):
        return False
    p = Fraction(orbit)
    for a in L.special_points() | L2.special_points():
        if frac_part(a - p) != 0 and L.stalk(a) != L2.stalk(a):
            return False
    big = enlarge_middle(t)
    _, L3 = glue(conn, L, big)
    t3 = restrict_to_orbit(conn, L3, orbit)
    return t3.same_as(big)


# -- classification ------------------------------------------------------------

@dataclass
class Classification:
    fg_over_tau: bool
    fg_over_tau_inv: bool
    vector_bundle: bool
    partitions: dict  # orbit -> (left, right)
    witness: Lattice = None


def _orbits_of(conn, L):
    pts = set(conn.singular_points()[0]) | L.special_points()
    return sorted({frac_part(a) for a in pts})


def _zeroes(conn, W, orbits):
    return sorted(a for p in orbits for a in orbit_profile(conn, W, p).zeroes)


def no_zero_witness(conn, L, max_steps=None):
    """``L + T^{-1}L + ...`` until ``T^{-1}L' ⊆ L'``; ``None`` if no stabilisation within the bound."""
    orbits = _orbits_of(conn, L)
    if max_steps is None:
        pts = [a for p in orbits for a in orbit_profile(conn, L, p).points()]
        span = int(max(pts) - min(pts)) + 1 if pts else 0
        max_steps = conn.rank * (span + 1) + 1
    W = L
    for _ in range(max_steps + 1):
        zeroes = _zeroes(conn, W, orbits)
        if not zeroes:
            return W
        # T^{-1}W differs from W only left of zeroes; extend the sum there
        new = {a - 1: W.stalk(a - 1) + conn.transport(W.stalk(a), -1) for a in zeroes}
        W = W.with_stalks(new)
    return None


def classify_module(conn, L):
    prof = zero_pole_profile(conn, L)
    orbits = sorted({frac_part(a) for a in prof.points()})
    parts = {}
    for p in orbits:
        t = restrict_to_orbit(conn, L, p)
        parts[p] = (t.left_partition(), t.right_partition())
    fg_tau = all(not lp for lp, _ in parts.values())
    fg_inv = all(not rp for _, rp in parts.values())
    witness = no_zero_witness(conn, L) if fg_tau else None
    return Classification(fg_tau, fg_inv, fg_tau and fg_inv, parts, witness)


def austere_check(conn, L, orbit):
    prof = orbit_profile(conn, L, orbit)
    return is_austere(prof.zeroes, prof.poles)


__all__ = [
    "Classification",
    "DiskTriple",
    "FiniteLengthModule",
    "classify_module",
    "enlarge_middle",
    "ext1_dimension",
    "glue",
    "no_zero_witness",
    "operator_vanishing_cycles",
    "restrict_to_orbit",
    "round_trip_check",
    "torsion_partition",
    "torsion_triple",
    "vanishing_cycles",
]
