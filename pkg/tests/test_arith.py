import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from holodiff.arith import (
    LaurentTrunc,
    Poly,
    PolyMatrix,
    RatFunc,
    RatFuncMatrix,
    format_rat,
    frac_part,
    laurent_expand,
    local_elementary_divisors,
    parse_rat,
    polynomial_matrix_kernel,
    smith_normal_form,
)
from holodiff.arith import _kernels_py as pyk
from holodiff.arith import kernels
from holodiff.errors import ParseError, SingularMatrix

Z = Poly.z()
ONE = Poly.constant(1)


def P(*c):
    return Poly(list(c))


def R(num, den=1):
    return RatFunc(num if isinstance(num, Poly) else Poly.constant(num),
                   den if isinstance(den, Poly) else Poly.constant(den))


small_ints = st.integers(-6, 6)
polys = st.lists(small_ints, min_size=0, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# -- rationals -------------------------------------------------------------------

def test_rat_format_and_parse_round_trip():
    for x in [Fraction(0), Fraction(3), Fraction(-7, 4), Fraction(1, 3)]:
        assert parse_rat(format_rat(x)) == x
    assert format_rat(Fraction(6, 3)) == "2"
    with pytest.raises(ParseError):
        parse_rat("1/0")
    with pytest.raises(ParseError):
        parse_rat("abc")


def test_frac_part_is_orbit_representative():
    assert frac_part(Fraction(-3, 2)) == Fraction(1, 2)
    assert frac_part(Fraction(5, 2)) == Fraction(1, 2)
    assert frac_part(Fraction(-2)) == 0


# -- polynomials ------------------------------------------------------------------

@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly()


@given(polys, nonzero_polys)
def test_poly_division(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys, st.fractions(max_denominator=5).filter(lambda x: abs(x) < 5))
def test_taylor_shift_is_substitution(a, c):
    s = a.shift(c)
    for x in (Fraction(0), Fraction(1), Fraction(-2, 3)):
        assert s(x) == a(x + c)


def test_poly_leading_coefficient_invariant():
    p = P(1, 2, 0)
    assert p.degree == 1 and p.lc == 2
    assert Poly().is_zero() and Poly().degree == -1


@given(nonzero_polys, nonzero_polys)
def test_ratfunc_lowest_terms(a, b):
    f = RatFunc(a * b, b * b)
    assert f.den.lc == 1
    assert f == RatFunc(a, b)


# -- kernels: compiled and pure backends agree -----------------------------------------------

ints = st.lists(st.integers(-10**20, 10**20), min_size=1, max_size=8)


@given(ints, ints)
def test_kernel_conv_backends_agree(a, b):
    assert list(kernels.conv(a, b)) == list(pyk.conv(a, b))


@given(ints, st.integers(-5, 5))
def test_kernel_taylor_shift_backends_agree(a, c):
    assert list(kernels.taylor_shift(a, c)) == list(pyk.taylor_shift(a, c))


@given(ints, ints.filter(lambda b: b[-1] != 0))
def test_kernel_pseudo_divmod_backends_agree(a, b):
    q1, r1, k1 = kernels.pseudo_divmod(a, b)
    q2, r2, k2 = pyk.pseudo_divmod(a, b)
    assert (list(q1), list(r1), k1) == (list(q2), list(r2), k2)


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


# -- Smith form ---------------------------------------------------------------------

def _check_smith(M):
    U, D, V = smith_normal_form(M)
    assert U * M * V == D
    assert U.det().is_constant() and not U.det().is_zero()
    assert V.det().is_constant() and not V.det().is_zero()
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j].is_zero()
    for x, y in zip(diag, diag[1:]):
        if not x.is_zero():
            assert (y % x).is_zero()
        else:
            assert y.is_zero()
    for x in diag:
        assert x.is_zero() or x.lc == 1
    return diag


def test_smith_examples():
    assert _check_smith(PolyMatrix([[Z, Poly()], [Poly(), ONE]])) == [ONE, Z]
    U, D, V = smith_normal_form(PolyMatrix([[ONE]]))
    assert D == PolyMatrix([[ONE]]) and U == PolyMatrix.identity(1) and V == PolyMatrix.identity(1)
    # det is z^2 and the entry gcd is z, so the invariant factors are z, z
    assert _check_smith(PolyMatrix([[Z, Z * Z], [Poly(), Z]])) == [Z, Z]
    assert _check_smith(PolyMatrix([[Z, Poly()], [Poly(), Z * Z]])) == [Z, Z * Z]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.randoms(use_true_random=False))
def test_smith_properties(m, n, rnd):
    M = PolyMatrix([[Poly([rnd.randint(-3, 3) for _ in range(rnd.randint(0, 3))]) for _ in range(n)]
                    for _ in range(m)])
    _check_smith(M)


# -- local elementary divisors ------------------------------------------------------------

def test_local_divisors_examples():
    M = RatFuncMatrix.diag([R(P(-1, 1)), R(1, P(-1, 1))])
    assert local_elementary_divisors(M, 1) == [-1, 1]
    assert local_elementary_divisors(RatFuncMatrix.identity(3), Fraction(5, 2)) == [0, 0, 0]
    M = RatFuncMatrix([[R(Z), R(1)], [R(0), R(Z)]])
    assert local_elementary_divisors(M, 0) == [0, 2]
    with pytest.raises(SingularMatrix):
        local_elementary_divisors(RatFuncMatrix([[R(Z), R(Z)], [R(1), R(1)]]), 0)


def _rand_ratfunc(rng, deg=3):
    num = Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, deg + 1))])
    den = Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 2))])
    if den.is_zero():
        den = ONE
    if rng.random() < 0.3:
        den = den * Z
    return RatFunc(num, den)


def _valuation(f, a):
    return f.num.valuation_at(a) - f.den.valuation_at(a)


def test_local_divisors_sum_to_det_valuation_200_random():
    rng = random.Random(11)
    done = 0
    while done < 200:
        n = rng.randint(1, 3)
        M = RatFuncMatrix([[_rand_ratfunc(rng) for _ in range(n)] for _ in range(n)])
        det = M.det()
        if det.is_zero():
            continue
        a = rng.choice([Fraction(0), Fraction(1), Fraction(-1)])
        assert sum(local_elementary_divisors(M, a)) == _valuation(det, a)
        done += 1


def test_local_divisors_gauge_invariance():
    rng = random.Random(12)
    for _ in range(30):
        n = rng.randint(1, 3)
        M = RatFuncMatrix([[_rand_ratfunc(rng) for _ in range(n)] for _ in range(n)])
        if M.det().is_zero():
            continue
        # unit at 0: unipotent times a factor nonvanishing at 0
        Pm = [[R(1) if i == j else (R(Poly([rng.randint(-2, 2), 1])) if i < j else R(0))
               for j in range(n)] for i in range(n)]
        Qm = [[R(P(1, 1), P(2, -1)) if i == j else (R(rng.randint(-2, 2)) if i > j else R(0))
               for j in range(n)] for i in range(n)]
        X = RatFuncMatrix(Pm) * M * RatFuncMatrix(Qm)
        assert local_elementary_divisors(X, 0) == local_elementary_divisors(M, 0)


# -- kernels of polynomial matrices --------------------------------------------------------------

def test_kernel_examples():
    K = polynomial_matrix_kernel(PolyMatrix([[Z, -Z]]))
    assert K.cols == 1
    v = [K[0, 0], K[1, 0]]
    assert v[0] == v[1] and v[0].is_constant()
    assert polynomial_matrix_kernel(PolyMatrix.identity(2)).cols == 0
    K = polynomial_matrix_kernel(PolyMatrix([[ONE, Z]]))
    assert K.cols == 1
    # primitive: a scalar multiple of (-z, 1)
    c = K[1, 0]
    assert c.is_constant() and K[0, 0] == -Z * c


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.randoms(use_true_random=False))
def test_kernel_properties(m, n, rnd):
    M = PolyMatrix([[Poly([rnd.randint(-2, 2) for _ in range(rnd.randint(0, 2))]) for _ in range(n)]
                    for _ in range(m)])
    K = polynomial_matrix_kernel(M)
    if K.cols:
        assert all(x.is_zero() for r in (M * K).tolist() for x in r)
    _, D, _ = smith_normal_form(M)
    rank = sum(1 for t in range(min(D.rows, D.cols)) if D[t, t])
    assert K.cols + rank == n


# -- Laurent expansion ------------------------------------------------------------------

def test_laurent_examples():
    s = laurent_expand(R(1, P(1, -1)), 0, 3)
    assert s.valuation == 0 and s.coefficients == (1, 1, 1)
    # multiplying back by (1 - pi) gives 1 through the order
    back = s * LaurentTrunc.from_poly(0, P(1, -1))
    assert [back.coeff(k) for k in range(3)] == [1, 0, 0]
    s = laurent_expand(R(Z), 0, 2)
    assert s.valuation == 1 and s.coeff(1) == 1 and s.coeff(2) == 0
    s = laurent_expand(R(1, Z), 0, 1)
    assert s.valuation == -1 and s.coefficients == (1,)


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys, nonzero_polys,
       st.sampled_from([Fraction(0), Fraction(1), Fraction(-1, 2)]))
def test_laurent_expansion_is_multiplicative(a, b, c, d, pt):
    f, g = RatFunc(a, b), RatFunc(c, d)
    N = 6
    lhs = laurent_expand(f * g, pt, N)
    rhs = laurent_expand(f, pt, N) * laurent_expand(g, pt, N)
    assert lhs.valuation == rhs.valuation
    assert lhs.agrees(rhs)
