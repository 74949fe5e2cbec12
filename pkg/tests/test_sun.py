import pytest

from paradet.blockfact import sun_check
from paradet.blockfact.sun import permutation_sign, sign_matrix, sine_permutation
from paradet.residues import DomainError


def test_small_cases():
    r = sun_check(3)
    assert (r.s_n, r.t_n) == (1, 1) and r.ok
    r = sun_check(5)
    assert (r.s_n, r.t_n) == (-2, -2) and r.ok
    r = sun_check(9)
    assert r.n == 4 and r.tau == 3 and r.s_n % 4 == 0 and r.ok
    assert sun_check(7).t_n == -sun_check(7).s_n


def test_sign_matrix_entries():
    for N in (5, 9, 15):
        T = sign_matrix(N)
        assert {v for row in T for v in row} <= {-1, 0, 1}
    assert sign_matrix(5) == [[1, 1], [-1, 1]]


def test_permutation_parity_rule():
    for n in range(1, 50):
        assert (permutation_sign(sine_permutation(n)) == -1) == (n % 4 == 2)
    assert permutation_sign([2, 1, 3]) == -1 and permutation_sign([2, 3, 1]) == 1


def test_vanishing_case():
    r = sun_check(21, numeric=False)
    assert r.s_n == 0 and r.t_n == 0 and r.ok


def test_even_N_rejected():
    with pytest.raises(DomainError):
        sun_check(8)
    with pytest.raises(DomainError):
        sun_check(1)
