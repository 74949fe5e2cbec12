import itertools
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paradet.matrices import (Bernoulli, ClosedFormDet, GenericX, GenericY, GenericZ, TangentPower,
                              TransformKind, build_matrix, build_paratrophic, build_transform,
                              det_exact, det_integer, det_numeric, dump_matrix, hadamard_bound,
                              load_matrix, random_assignment, transform_det_closed)
from paradet.residues import DomainError

F = Fraction


def cofactor_det(M):
    n = len(M)
    if n == 0:
        return F(1)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = F((-1) ** inv)
        for i, p in enumerate(perm):
            term *= M[i][p]
        total += term
    return total


def test_build_examples():
    assert build_matrix(GenericX([F(1), F(2), F(3)])) == [[1, 1, 1], [1, 2, 3], [1, 3, 2]]
    Y = build_matrix(GenericY([F(5), F(6), F(7)], 4))
    assert Y == [[5, 5, 5], [5, 6, 7], [5, 7, 5]]
    assert build_matrix(GenericZ([F(1), F(2)], 5)) == [[1, 2], [2, -1]]
    assert build_matrix(GenericZ([], 2)) == []
    B = build_matrix(Bernoulli(1, 5))
    assert B == [[F(-3, 10), F(-1, 10)], [F(-1, 10), F(3, 10)]]
    assert build_matrix(Bernoulli(2, 2)) == [[F(1, 6), F(1, 6)], [F(1, 6), F(-1, 12)]]


def test_tangent_matrix_drops_zero_index():
    T = build_matrix(TangentPower(2, 5), 256)
    assert len(T) == 2 and len(build_paratrophic(TangentPower(2, 5), 256)) == 3
    with mpmath.workprec(256):
        assert abs(T[0][0] - mpmath.tan(mpmath.pi / 5) ** 2) < mpmath.mpf(2) ** -240
    with pytest.raises(DomainError):
        TangentPower(1, 4)


def test_assignment_validation():
    with pytest.raises(DomainError):
        GenericY([F(1)], 4)
    with pytest.raises(DomainError):
        Bernoulli(0, 3)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 8, 9, 12])
def test_transform_identities(N):
    with mpmath.workprec(256):
        Fm = mpmath.matrix(build_transform(TransformKind("F", N)))
        G = Fm * Fm.H
        assert mpmath.mnorm(G - N * mpmath.eye(N), 1) < mpmath.mpf(2) ** -200
        if N % 2:
            S = mpmath.matrix(build_transform(TransformKind("S", N)))
            n = (N - 1) // 2
            assert mpmath.mnorm(S * S - mpmath.mpf(N) / 4 * mpmath.eye(n), 1) < mpmath.mpf(2) ** -200


def test_transform_examples():
    with mpmath.workprec(256):
        assert abs(build_transform(TransformKind("S", 3))[0][0] - mpmath.sqrt(3) / 2) < mpmath.mpf(2) ** -250
    C2 = build_transform(TransformKind("C", 2))
    assert [[float(v) for v in r] for r in C2] == [[0.5, 0.5], [0.5, -0.5]]
    assert transform_det_closed("F", 1).evaluate() == 1
    with pytest.raises(ValueError):
        TransformKind("F", 3, 32)


def test_closed_form_arithmetic():
    c = transform_det_closed("S", 5)
    assert (c * c.inverse()).exact_value() == 1
    assert ClosedFormDet(9, 0, -1, F(3, 2), 1).exact_value() == -54
    assert ClosedFormDet(3, 0, 1, F(1, 2), 0).exact_value() is None
    assert ClosedFormDet(4, 2, 1, F(0), 0).exact_value() == -1


@given(st.lists(st.lists(st.fractions(-6, 6, max_denominator=5), min_size=4, max_size=4),
                min_size=4, max_size=4))
def test_det_exact_matches_cofactor(M):
    assert det_exact(M) == cofactor_det(M)


def test_det_edge_cases():
    assert det_exact([]) == 1
    assert det_integer([[0, 1], [1, 0]]) == -1
    assert det_integer([[2, 4], [1, 2]]) == 0
    assert det_exact([[F(1, 2)]]) == F(1, 2)


def test_det_numeric_examples():
    with mpmath.workprec(256):
        d = det_numeric(build_matrix(TangentPower(1, 5), 256), 256)
        assert abs(d.value + 10) < mpmath.mpf(2) ** -240
        d3 = det_numeric(build_matrix(TangentPower(1, 3), 256), 256)
        assert abs(d3.value - mpmath.sqrt(3)) < mpmath.mpf(2) ** -240
        S5 = det_numeric(build_transform(TransformKind("S", 5)), 256).value
        assert abs(S5 - transform_det_closed("S", 5).evaluate()) < mpmath.mpf(2) ** -240
    sing = det_numeric([[1, 2], [2, 4]], 128)
    assert sing.singular


@pytest.mark.parametrize("N", [4, 7, 10])
def test_det_numeric_matches_exact(N):
    M = build_matrix(random_assignment("x", N, random.Random(N)))
    with mpmath.workprec(256):
        exact = det_exact(M)
        num = det_numeric(M, 256).value
        assert abs(num - mpmath.mpf(exact.numerator) / exact.denominator) <= \
            mpmath.mpf(2) ** -200 * max(1, abs(num))
        assert abs(num) <= hadamard_bound(M, 256) * (1 + mpmath.mpf(2) ** -100)


def test_dump_roundtrip():
    M = build_matrix(Bernoulli(3, 6))
    assert load_matrix(dump_matrix(M)) == M
    T = build_matrix(TangentPower(3, 7), 256)
    back = load_matrix(dump_matrix(T, 256))
    with mpmath.workprec(256):
        assert all(abs(a - b) <= mpmath.mpf(2) ** -200 * abs(a) for r, s in zip(T, back) for a, b in zip(r, s))
