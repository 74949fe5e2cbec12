import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paradet.exactnum import (bernoulli_poly, coeff_A, coeff_a, euler_poly, hp_context,
                              norlund_poly, periodic_bernoulli)
from paradet.residues import divisors

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=60)

A_TABLE = {
    (1, 1): Fraction(-1),
    (2, 1): Fraction(4, 3), (2, 2): Fraction(1, 3),
    (3, 1): Fraction(-23, 15), (3, 2): Fraction(-2, 3), (3, 3): Fraction(-2, 45),
    (4, 1): Fraction(176, 105), (4, 2): Fraction(44, 45), (4, 3): Fraction(16, 135),
    (4, 4): Fraction(1, 315),
}
CAP_A_TABLE = {
    (0, 0): Fraction(-1),
    (1, 0): Fraction(1), (1, 1): Fraction(2, 3),
    (2, 0): Fraction(-1), (2, 1): Fraction(-10, 9), (2, 2): Fraction(-2, 15),
    (3, 0): Fraction(1), (3, 1): Fraction(196, 135), (3, 2): Fraction(14, 45),
    (3, 3): Fraction(4, 315),
    (4, 0): Fraction(-1), (4, 1): Fraction(-1636, 945), (4, 2): Fraction(-38, 75),
    (4, 3): Fraction(-4, 105), (4, 4): Fraction(-2, 2835),
}


def test_bernoulli_poly_examples():
    assert bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)
    assert bernoulli_poly(1, 0) == Fraction(-1, 2)
    assert bernoulli_poly(3, Fraction(1, 3)) == Fraction(1, 27)
    assert bernoulli_poly(0, Fraction(7, 3)) == 1


def test_periodic_bernoulli_examples():
    assert periodic_bernoulli(1, 0) == 0
    assert periodic_bernoulli(1, 3) == 0
    assert periodic_bernoulli(2, Fraction(3, 2)) == Fraction(-1, 12)
    assert periodic_bernoulli(1, Fraction(7, 4)) == Fraction(1, 4)


def test_norlund_examples():
    for j in range(7):
        for x in (Fraction(0), Fraction(1, 3), Fraction(-5, 2)):
            assert norlund_poly(1, j, x) == bernoulli_poly(j, x)
    assert norlund_poly(3, 0, Fraction(2, 7)) == 1
    assert norlund_poly(2, 1, 0) == -1


def test_norlund_against_series():
    # (t/(e^t-1))^l e^{xt} expanded independently with mpmath Taylor coefficients
    for l in (2, 3):
        x = Fraction(1, 3)
        coeffs = mpmath.taylor(lambda t: (t / mpmath.expm1(t)) ** l * mpmath.exp(x * t)
                               if t != 0 else mpmath.mpf(1), mpmath.mpf(0), 6)
        for j in range(7):
            expected = coeffs[j] * mpmath.factorial(j)
            assert abs(expected - mpmath.mpf(norlund_poly(l, j, x).numerator)
                       / norlund_poly(l, j, x).denominator) < 1e-8


def test_coefficient_tables():
    for (k, s), v in A_TABLE.items():
        assert coeff_a(k, s) == v
    for (k, s), v in CAP_A_TABLE.items():
        assert coeff_A(k, s) == v
    assert len(A_TABLE) + len(CAP_A_TABLE) == 25


def test_coefficient_ranges():
    with pytest.raises(ValueError):
        coeff_a(2, 0)
    with pytest.raises(ValueError):
        coeff_A(2, 3)


def test_euler_poly_examples():
    assert euler_poly(0, Fraction(3, 7)) == 1
    assert euler_poly(1, 0) == Fraction(-1, 2)
    assert euler_poly(1, Fraction(1, 2)) == 0
    # E_2(x) = x^2 - x
    assert euler_poly(2, Fraction(1, 3)) == Fraction(1, 9) - Fraction(1, 3)


@pytest.mark.parametrize("m", range(13))
def test_duplication_identity(m):
    rng = random.Random(m)
    for _ in range(50):
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        assert bernoulli_poly(m, x) == 2 ** (m - 1) * (bernoulli_poly(m, x / 2)
                                                      + bernoulli_poly(m, (x + 1) / 2))


@pytest.mark.parametrize("N", range(3, 32, 2))
def test_half_shift_identity(N):
    n = (N - 1) // 2
    for d in divisors(N):
        Nd = N // d
        for t in range(Nd):
            for m in range(1, 10):
                lhs = (periodic_bernoulli(m, Fraction(t, Nd))
                       - 2 ** m * periodic_bernoulli(m, Fraction(t, 2 * Nd)))
                rhs = (periodic_bernoulli(m, Fraction(t, Nd))
                       - 2 ** m * periodic_bernoulli(m, Fraction((n + 1) * t, Nd)))
                assert lhs == (-1) ** t * rhs


@given(rationals, st.integers(0, 8))
def test_bernoulli_difference_equation(x, m):
    # B_m(x+1) - B_m(x) = m x^(m-1)
    expected = m * x ** (m - 1) if m else 0
    assert bernoulli_poly(m, x + 1) - bernoulli_poly(m, x) == expected


def test_hp_context():
    lo, hi = hp_context(256), hp_context(512)
    with mpmath.workprec(512):
        assert abs(lo.pi() - hi.pi()) < mpmath.mpf(2) ** -250
    third = lo.convert(Fraction(1, 3))
    with lo.workprec():
        assert abs(third * 3 - 1) <= 2 * mpmath.eps
        assert abs(mpmath.tan(lo.pi() / 4) - 1) < mpmath.mpf(10) ** -70
    assert lo.raised().precision == 384
    with pytest.raises(ValueError):
        hp_context(32)
