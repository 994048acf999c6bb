import random
from fractions import Fraction

import pytest

from corpus import check_factorization, pi_pow, random_integral_unit, random_laurent_poly_matrix
from holodiff.arith import LaurentTrunc, Poly, RatFunc
from holodiff.errors import InsufficientPrecision, SingularInput
from holodiff.factorization import as_series_matrix, birkhoff_factor, factor_rational

Z = Poly.z()
N = 16


def rf(num, den=(1,)):
    return RatFunc(Poly(list(num)), Poly(list(den)))


def test_diagonal_laurent_polynomial_is_its_own_factor():
    B = as_series_matrix([[pi_pow(-1), RatFunc.constant(0)], [RatFunc.constant(0), RatFunc.constant(1)]], 0, N)
    res = birkhoff_factor(B, N, 0)
    assert [[x.to_ratfunc() for x in r] for r in res.C] == [[pi_pow(-1), 0], [0, 1]]
    ident = [[LaurentTrunc.one(0), LaurentTrunc.zero(0)], [LaurentTrunc.zero(0), LaurentTrunc.one(0)]]
    assert all(res.A[i][j].agrees(ident[i][j]) for i in range(2) for j in range(2))


def test_unit_series_goes_into_the_integral_factor():
    entries = [[rf([1], [1, -1])]]
    res = factor_rational(entries, N, 0)
    assert res.C[0][0].to_ratfunc() == 1
    assert res.A[0][0].coefficients[:N] == tuple([Fraction(1)] * N)


def test_partial_fraction_example():
    entries = [[RatFunc.constant(1), rf([1], [0, 1, -1])], [RatFunc.constant(0), RatFunc.constant(1)]]
    res = factor_rational(entries, N, 0)
    C = [[x.to_ratfunc() for x in r] for r in res.C]
    assert C == [[1, pi_pow(-1)], [0, 1]]
    expected_A = as_series_matrix([[RatFunc.constant(1), rf([1], [1, -1])],
                                   [RatFunc.constant(0), RatFunc.constant(1)]], 0, N)
    for i in range(2):
        for j in range(2):
            assert res.A[i][j].agrees(expected_A[i][j])
    check_factorization(as_series_matrix(entries, 0, N + 8), res, 0, N)


def test_random_factorable_matrices():
    rng = random.Random(31)
    for _ in range(15):
        n = rng.randint(1, 3)
        point = rng.choice([0, Fraction(1, 2)])
        entries = (random_integral_unit(rng, n, point) * random_laurent_poly_matrix(rng, n, point)).tolist()
        res = factor_rational(entries, N, point)
        check_factorization(as_series_matrix(entries, point, N + 16), res, Fraction(point), N)


def test_higher_order_gives_same_laurent_factor():
    rng = random.Random(32)
    for _ in range(8):
        n = rng.randint(1, 3)
        entries = (random_integral_unit(rng, n) * random_laurent_poly_matrix(rng, n)).tolist()
        a = factor_rational(entries, N, 0)
        b = factor_rational(entries, N + 8, 0)
        assert [[x.to_ratfunc() for x in r] for r in a.C] == [[x.to_ratfunc() for x in r] for r in b.C]


def test_errors():
    one = RatFunc.constant(1)
    with pytest.raises(SingularInput):
        birkhoff_factor(as_series_matrix([[one, one], [one, one]], 0, N), N, 0)
    with pytest.raises(SingularInput):
        birkhoff_factor(as_series_matrix([[pi_pow(20)]], 0, N), N, 0)
    coarse = [[LaurentTrunc(0, 0, [1, 1], 2)]]
    with pytest.raises(InsufficientPrecision):
        birkhoff_factor(coarse, N, 0)
    with pytest.raises(ValueError):
        birkhoff_factor([[LaurentTrunc.one(0), LaurentTrunc.one(0)]], N, 0)
