import random
from fractions import Fraction

import pytest

from corpus import HALF, lin, random_connection, random_lattice, same_module, sublattice
from holodiff.arith import Poly, QMatrix, RatFunc, RatFuncMatrix
from holodiff.errors import IncompatibleTriple, MixedCaseUnsupported
from holodiff.lattices import DConnection, Lattice, intermediate_extension
from holodiff.restriction import (
    DiskTriple,
    FiniteLengthModule,
    classify_module,
    enlarge_middle,
    ext1_dimension,
    glue,
    operator_vanishing_cycles,
    restrict_to_orbit,
    round_trip_check,
    torsion_partition,
    vanishing_cycles,
)
from holodiff.skew import DifferenceOperator, companion_connection
from holodiff.stalks import LocalLattice, pi_power

Z = Poly.z()
z = DifferenceOperator.z()
T = DifferenceOperator.tau()
ORBITS = (Fraction(0), HALF)


def conn1(f):
    return DConnection(RatFuncMatrix([[f]]))


def flm(parts, p=0):
    return FiniteLengthModule(tuple(parts), Fraction(p))


# -- finite-length modules ---------------------------------------------------------------

def test_finite_length_module_normalises():
    m = flm([1, 3, 2])
    assert m.partition == (3, 2, 1) and m.length == 6
    with pytest.raises(ValueError):
        flm([0, 1])


# -- restriction ----------------------------------------------------------------------

def test_restriction_examples():
    t = restrict_to_orbit(DConnection(RatFuncMatrix.identity(2)), Lattice.standard(2), 0)
    assert t.left == t.middle == t.right
    t = restrict_to_orbit(conn1(RatFunc.from_poly(Z)), Lattice.standard(1), 0)
    assert t.middle.index(t.left) == 1 and t.middle.index(t.right) == 0


def test_restriction_is_lattice_independent():
    rng = random.Random(21)
    checked = 0
    while checked < 6:
        n = rng.randint(1, 3)
        conn, L = random_connection(rng, n), random_lattice(rng, n)
        L2 = sublattice(rng, L)
        if not same_module(conn, L, L2, 8):
            continue
        checked += 1
        for p in ORBITS:
            assert restrict_to_orbit(conn, L, p).same_as(restrict_to_orbit(conn, L2, p))


def test_sublattice_of_a_smaller_module_changes_the_restriction():
    # the trivial connection: (z + 3/2) generates Q[z], 1/(z - 5/2) adds poles along 1/2 + Z
    conn = DConnection(RatFuncMatrix([[RatFunc.constant(-1)]]))
    L = Lattice(RatFuncMatrix([[RatFunc(Poly.constant(1), lin(Fraction(5, 2)))]]))
    L2 = Lattice(RatFuncMatrix([[RatFunc.from_poly(lin(Fraction(-3, 2)))]]))
    assert L.contains(L2) and not same_module(conn, L, L2, 8)
    assert vanishing_cycles(conn, L, HALF).partition == (1,)
    assert vanishing_cycles(conn, L2, HALF).partition == ()


def test_restriction_at_shifted_point_is_transported():
    rng = random.Random(22)
    conn, L = random_connection(rng, 2), random_lattice(rng, 2)
    t0 = restrict_to_orbit(conn, L, HALF)
    t1 = restrict_to_orbit(conn, L, HALF, shift=1)
    assert t1.point == HALF + 1
    assert conn.transport(t0.middle, 1) == t1.middle
    assert t1.left_partition() == t0.left_partition()


# -- vanishing cycles ----------------------------------------------------------------------

def test_vanishing_examples():
    bundle = DConnection(RatFuncMatrix([[RatFunc.constant(2), RatFunc.constant(0)],
                                        [RatFunc.from_poly(Z), RatFunc.constant(1)]]))
    for side in ("left", "right"):
        assert vanishing_cycles(bundle, Lattice.standard(2), 0, side).partition == ()
    conn = conn1(RatFunc.from_poly(Z))
    assert vanishing_cycles(conn, Lattice.standard(1), 0, "left").partition == (1,)
    assert vanishing_cycles(conn, Lattice.standard(1), 0, "right").partition == ()
    delta = z
    assert operator_vanishing_cycles(delta, 0, "left").partition == (1,)
    assert operator_vanishing_cycles(delta, 0, "right").partition == (1,)
    with pytest.raises(ValueError):
        vanishing_cycles(conn, Lattice.standard(1), 0, "middle")


def test_torsion_partition_counts_root_multiplicities():
    f = lin(0) ** 2 * lin(3) * lin(HALF)
    assert torsion_partition(f, 0).partition == (2, 1)
    assert torsion_partition(f, HALF).partition == (1,)
    assert torsion_partition(f, Fraction(1, 3)).partition == ()


def test_involution_agrees_with_direct_right_side():
    rng = random.Random(23)
    for _ in range(6):
        n = rng.randint(1, 3)
        conn, L = random_connection(rng, n), random_lattice(rng, n)
        for p in ORBITS:
            direct = vanishing_cycles(conn, L, p, "right")
            invol = vanishing_cycles(conn, L, p, "right", method="involution")
            assert direct.partition == invol.partition


def test_zeroes_show_up_on_the_left():
    # a zero on the orbit with no pole to its right cannot be removed by any lattice
    conn = conn1(RatFunc(lin(2), lin(Fraction(1, 3))))
    assert vanishing_cycles(conn, Lattice.standard(1), 0, "left").partition == (1,)
    assert vanishing_cycles(conn, Lattice.standard(1), 0, "right").partition == ()


# -- classification ------------------------------------------------------------------

def test_classify_examples():
    c = classify_module(DConnection(RatFuncMatrix.identity(1)), Lattice.standard(1))
    assert c.vector_bundle and c.fg_over_tau and c.fg_over_tau_inv
    c = classify_module(conn1(RatFunc.from_poly(Z)), Lattice.standard(1))
    assert c.fg_over_tau_inv and not c.fg_over_tau and c.witness is None
    c = classify_module(conn1(RatFunc(Z, lin(HALF))), Lattice.standard(1))
    assert not c.fg_over_tau and not c.fg_over_tau_inv
    assert c.partitions[Fraction(0)] == ((1,), ())
    assert c.partitions[HALF] == ((), (1,))


def test_classify_witness_has_no_zeroes():
    c = classify_module(conn1(RatFunc(Poly.constant(1), Z)), Lattice.standard(1))
    assert c.fg_over_tau and c.witness is not None
    from holodiff.lattices import zero_pole_profile
    assert not zero_pole_profile(conn1(RatFunc(Poly.constant(1), Z)), c.witness).zeroes


# -- Ext^1 ---------------------------------------------------------------------------------

def _hom_image_rank(H_list, n, b):
    """Rank of ``Hom(M, N) -> (+) Hom(M_side, N)`` for ``N = (+) Q[pi]/pi^b_j`` (brute force)."""
    top = max(b)
    # coordinates of phi: phi(e_i) in N, basis (i, j, s) with s < b_j
    dom = [(i, j, s) for i in range(n) for j in range(len(b)) for s in range(b[j])]
    cols = []
    for (i, j, s) in dom:
        col = []
        for H in H_list:
            # (phi o iota)(f_k) = sum_i H[i][k] phi(e_i); record coefficient of pi^t in summand j
            for k in range(n):
                h = H[i][k]
                coeffs = {}
                if h.n:
                    ser = h.series(top)
                    for t, c in enumerate(ser):
                        coeffs[h.v + t] = c
                for jj in range(len(b)):
                    for t in range(b[jj]):
                        col.append(coeffs.get(t - s, Fraction(0)) if jj == j else Fraction(0))
        cols.append(col)
    return QMatrix([list(r) for r in zip(*cols)]).rank()


def _ext1_oracle(t, N):
    n = t.rank
    b = list(N.partition)
    size = n * sum(b)
    image = _hom_image_rank([t.middle.transition(t.left), t.middle.transition(t.right)], n, b)
    return 2 * size - image


def _triple(left, middle, right, rank):
    return DiskTriple(Fraction(0), Fraction(0), rank, left, middle, right, None, 1)


def test_ext1_examples():
    assert ext1_dimension(flm([1]), flm([1])) == 1
    M = LocalLattice.standard(0, 1)
    assert ext1_dimension(_triple(M, M, M, 1), flm([1])) == 1
    assert ext1_dimension(_triple(M.scale(1), M, M, 1), flm([1])) == 1
    assert ext1_dimension(flm([2, 1]), flm([3, 1])) == 2 + 1 + 1 + 1


def test_ext1_matches_brute_force():
    rng = random.Random(24)
    M = LocalLattice.standard(0, 1)
    assert _ext1_oracle(_triple(M.scale(1), M, M.scale(1), 1), flm([2])) == \
        ext1_dimension(_triple(M.scale(1), M, M.scale(1), 1), flm([2]))
    for _ in range(8):
        n = rng.randint(1, 3)
        conn, L = random_connection(rng, n), random_lattice(rng, n)
        t = restrict_to_orbit(conn, L, 0)
        N = flm(sorted([rng.randint(1, 2) for _ in range(rng.randint(1, 2))], reverse=True))
        assert ext1_dimension(t, N) == _ext1_oracle(t, N)


def test_ext1_mixed_case_rejected():
    M = LocalLattice.standard(0, 1)
    mixed = DiskTriple(Fraction(0), Fraction(0), 1, M, M, M, flm([1]), 1)
    with pytest.raises(MixedCaseUnsupported):
        ext1_dimension(mixed, flm([1]))


# -- gluing ------------------------------------------------------------------------------

def test_round_trip_examples():
    assert round_trip_check(DConnection(RatFuncMatrix.identity(2)), Lattice.standard(2), 0)
    assert round_trip_check(conn1(RatFunc.from_poly(Z)), Lattice.standard(1), 0)
    conn, L = companion_connection(T * T - z * T + (z - 1))
    assert round_trip_check(conn, L, 0)


def test_glue_restrict_identity():
    rng = random.Random(25)
    for _ in range(4):
        n = rng.randint(1, 3)
        conn, L = random_connection(rng, n), random_lattice(rng, n)
        for p in ORBITS:
            t = restrict_to_orbit(conn, L, p)
            _, G = glue(conn, L, t)
            assert restrict_to_orbit(conn, G.materialized(), p).same_as(t)


def test_glue_intermediate_extension_triple():
    rng = random.Random(26)
    for _ in range(4):
        n = rng.randint(1, 2)
        conn, L = random_connection(rng, n), random_lattice(rng, n)
        for p in ORBITS:
            t = restrict_to_orbit(conn, L, p)
            small = DiskTriple(t.orbit, t.point, t.rank, t.left, t.left + t.right, t.right, None, t.stable_shift)
            J = intermediate_extension(conn, L, p)
            tj = restrict_to_orbit(conn, J, p)
            # the austere lattice realises exactly the middle left + right
            assert tj.same_as(small)
            _, G = glue(conn, L, small)
            assert restrict_to_orbit(conn, G.materialized(), p).same_as(tj)
            # enlarging the middle by one step gives a length-one quotient, and j_!* sits inside
            big = enlarge_middle(small)
            _, G3 = glue(conn, L, big)
            t3 = restrict_to_orbit(conn, G3.materialized(), p)
            assert t3.middle.index(tj.middle) == 1
            assert G3.stalk(t.point).contains(G.stalk(t.point))


def test_glue_rejects_incompatible_triples():
    conn = conn1(RatFunc.from_poly(Z))
    L = Lattice.standard(1)
    t = restrict_to_orbit(conn, L, 0)
    wrong = DiskTriple(t.orbit, t.point, 1, t.left.scale(1), t.middle, t.right, None, t.stable_shift)
    with pytest.raises(IncompatibleTriple):
        glue(conn, L, wrong)
    tiny = DiskTriple(t.orbit, t.point, 1, t.left, t.left.scale(5), t.right, None, t.stable_shift)
    with pytest.raises(IncompatibleTriple):
        glue(conn, L, tiny)
    torsion = DiskTriple(t.orbit, t.point, 1, t.left, t.middle, t.right, flm([1]), t.stable_shift)
    with pytest.raises(MixedCaseUnsupported):
        glue(conn, L, torsion)


def test_enlarge_middle_adds_one_step():
    t = restrict_to_orbit(conn1(RatFunc.from_poly(Z)), Lattice.standard(1), 0)
    big = enlarge_middle(t)
    assert big.middle.index(t.middle) == 1
    H = t.middle.H
    assert big.middle == LocalLattice(t.point, [[H[0, 0] * pi_power(-1)]])
