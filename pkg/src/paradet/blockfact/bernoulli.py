"""Periodic Bernoulli matrices B_{k,N}: Hurwitz-zeta closed forms of their
transforms and the determinant as a product of Dirichlet L-values."""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from ..characters import characters_with_parity
from ..matrices import Bernoulli, ClosedFormDet, build_matrix, det_exact
from ..residues import DomainError, divisor_context, divisors
from ..specialvalues import GUARD_BITS, dirichlet_L, hurwitz_zeta, riemann_zeta
from .report import EXTRA_BITS, Factor, FactorizationReport, judge
from .structure import real_if_close


def l_value_constant(k: int, precision: int = 256) -> mpmath.mpf:
    """(-1)^(k/2+1) k!/(2 pi)^k for even k, (-1)^((k+1)/2) k!/(2 pi)^k for odd k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    sign = (-1) ** (k // 2 + 1) if k % 2 == 0 else (-1) ** ((k + 1) // 2)
    with mpmath.workprec(precision):
        return sign * mpmath.mpf(math.factorial(k)) / (2 * mpmath.pi) ** k


def bernoulli_hat_closed(k: int, d: int, t: int, N: int, precision: int = 256):
    """hat_d(t) of B~_k(a/N) through Hurwitz zeta values (cotangent for k = 1)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if d < 1 or N % d:
        raise DomainError(f"{d} does not divide N = {N}")
    Nd = N // d
    t %= Nd
    wp = precision + GUARD_BITS
    with mpmath.workprec(wp):
        if t == 0:
            if k % 2 or Nd != 1:
                if k % 2:
                    return mpmath.mpf(0)
                raise DomainError("t = 0 is covered only for the block d = N")
            value = l_value_constant(k, wp) * riemann_zeta(k, wp)
        elif k == 1:
            value = -mpmath.cot(mpmath.pi * t / Nd) / 4
        else:
            a = Fraction(t, Nd)
            pair = hurwitz_zeta(k, a, wp)
            pair = pair + hurwitz_zeta(k, 1 - a, wp) if k % 2 == 0 else pair - hurwitz_zeta(k, 1 - a, wp)
            value = l_value_constant(k, wp) / 2 * mpmath.mpf(Nd) ** (1 - k) * pair
    with mpmath.workprec(precision):
        return +value


def bernoulli_prefactor(k: int, N: int) -> ClosedFormDet:
    ctx = divisor_context(N)
    if k % 2 == 0:
        np_ = ctx.n_plus
        return ClosedFormDet(N, 0, (-1) ** (np_ * (np_ + 1) // 2), Fraction(np_ + 1, 2),
                             np_ + 1 - ctx.n_minus)
    nm = ctx.n_minus
    return ClosedFormDet(N, 0, (-1) ** (nm * (nm - 1) // 2), Fraction(nm, 2), 0)


def _characters(k: int, N: int):
    """(d, chi) pairs, chi mod d for d | N, with the parity of k (d > 2 for odd k)."""
    parity = 1 if k % 2 == 0 else -1
    for d in divisors(N):
        if parity == -1 and d <= 2:
            continue
        for chi in characters_with_parity(d, parity):
            yield d, chi


def bernoulli_factor(k: int, chi, precision: int = 256) -> mpmath.mpc:
    with mpmath.workprec(precision + 16):
        v = l_value_constant(k, precision + 16) * dirichlet_L(k, chi, precision + 16).value
    with mpmath.workprec(precision):
        return +v


def bernoulli_det_value(k: int, N: int, precision: int = 256) -> mpmath.mpf:
    """The L-value product alone, without the exact oracle."""
    with mpmath.workprec(precision + 16):
        acc = bernoulli_prefactor(k, N).evaluate(precision + 16)
        for _, chi in _characters(k, N):
            acc *= bernoulli_factor(k, chi, precision + 16)
    with mpmath.workprec(precision):
        return real_if_close(+acc, precision)


def bernoulli_det_formula(k: int, N: int, precision: int = 256) -> FactorizationReport:
    """det B_{k,N} as sign N^a 2^b times the product of C_k L(k, chi)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if N < 2:
        raise DomainError("N must be >= 2")
    hi = precision + EXTRA_BITS
    prefactor = bernoulli_prefactor(k, N)
    pairs = list(_characters(k, N))
    factors = [Factor(d, chi, bernoulli_factor(k, chi, precision)) for d, chi in pairs]

    def assemble(p, values):
        with mpmath.workprec(p + 16):
            acc = prefactor.evaluate(p + 16)
            for v in values:
                acc *= v
        with mpmath.workprec(p):
            return real_if_close(+acc, p)

    assembled = assemble(precision, [f.value for f in factors])
    assembled_hi = assemble(hi, [bernoulli_factor(k, chi, hi) for _, chi in pairs])
    oracle = det_exact(build_matrix(Bernoulli(k, N)))
    rel, margin, passed = judge(assembled, assembled_hi, oracle, precision)
    return FactorizationReport(N=N, family=f"bernoulli(k={k})", formula="bernoulli-L-value-product",
                               prefactor=prefactor, factors=factors, assembled=assembled,
                               oracle=oracle, rel_error=rel, precision=(precision, hi),
                               passed=passed, margin_bits=margin,
                               extra={"oracle_nonzero": oracle != 0})
