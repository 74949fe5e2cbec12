from fractions import Fraction

import mpmath
import pytest

from paradet.blockfact import bernoulli_det_formula, bernoulli_hat_closed, hat_exact
from paradet.blockfact.bernoulli import bernoulli_det_value, l_value_constant
from paradet.matrices import Bernoulli
from paradet.residues import DomainError, divisors


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("N", range(2, 22))
def test_closed_hat_matches_defining_sum(k, N):
    a = Bernoulli(k, N)
    with mpmath.workprec(300):
        for d in divisors(N):
            Nd = N // d
            for t in range(1, Nd):
                direct = hat_exact(a, d, t).to_mpc(300)
                closed = bernoulli_hat_closed(k, d, t, N, 256)
                assert abs(direct - closed) <= mpmath.mpf(2) ** -232 * max(1, abs(direct))


def test_closed_hat_at_zero():
    with mpmath.workprec(256):
        assert abs(bernoulli_hat_closed(2, 5, 0, 5) - mpmath.mpf(1) / 12) < mpmath.mpf(2) ** -240
        assert abs(bernoulli_hat_closed(4, 3, 0, 3) + mpmath.mpf(1) / 60) < mpmath.mpf(2) ** -240
    assert bernoulli_hat_closed(3, 1, 0, 6) == 0
    with pytest.raises(DomainError):
        bernoulli_hat_closed(2, 1, 0, 6)
    with pytest.raises(DomainError):
        bernoulli_hat_closed(2, 4, 1, 6)


def test_l_value_constant():
    with mpmath.workprec(256):
        assert abs(l_value_constant(2) - 2 / (2 * mpmath.pi) ** 2) < mpmath.mpf(2) ** -240
        assert abs(l_value_constant(1) + 1 / (2 * mpmath.pi)) < mpmath.mpf(2) ** -240


@pytest.mark.parametrize("k, N, value", [(2, 2, Fraction(-1, 24)), (3, 3, Fraction(1, 27)),
                                         (1, 5, Fraction(-1, 10))])
def test_determinant_spot_values(k, N, value):
    r = bernoulli_det_formula(k, N, 256)
    assert r.oracle == value and r.passed
    with mpmath.workprec(256):
        assert abs(r.assembled - mpmath.mpf(value.numerator) / value.denominator) < mpmath.mpf(2) ** -216


def test_det_value_without_oracle():
    with mpmath.workprec(256):
        assert abs(bernoulli_det_value(2, 6) - bernoulli_det_formula(2, 6).oracle.numerator
                   / mpmath.mpf(bernoulli_det_formula(2, 6).oracle.denominator)) < mpmath.mpf(10) ** -60
