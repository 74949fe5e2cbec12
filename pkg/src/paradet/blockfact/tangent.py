"""Tangent-power matrices T_{m,N}: rational closed forms of their transforms,
the eigenvalues in terms of generalized Bernoulli numbers and the class-number
form of det T_{1,N}."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..characters import DirichletCharacter, characters_with_parity, eval_char, induce_primitive
from ..cyclotomic import CycloElement, cyclo_product
from ..exactnum import coeff_A, coeff_a, periodic_bernoulli
from ..matrices import (ClosedFormDet, TangentPower, build_matrix, det_numeric, hadamard_bound,
                        tangent_precision)
from ..residues import DomainError, divisors, prime_divisors
from ..specialvalues import gen_bernoulli_exact, relative_class_number, root_value_exact
from .report import EXTRA_BITS, Factor, FactorizationReport, judge, threshold
from .structure import real_if_close


def _check(m: int, N: int, d: int | None = None) -> int:
    if N < 3 or N % 2 == 0:
        raise DomainError("tangent matrices need odd N >= 3")
    if m < 1:
        raise DomainError("tangent exponent m must be >= 1")
    if d is not None and (d < 1 or N % d):
        raise DomainError(f"{d} does not divide N = {N}")
    return (N - 1) // 2


def _bernoulli_difference(j: int, t: int, Nd: int, n: int) -> Fraction:
    """B~_j(t/N_d) - 2^j B~_j((n+1)t/N_d)."""
    return (periodic_bernoulli(j, Fraction(t, Nd))
            - 2 ** j * periodic_bernoulli(j, Fraction((n + 1) * t, Nd)))


def tangent_hat_closed(m: int, d: int, t: int, N: int) -> Fraction:
    """hat_d(t) of the tangent powers tan^m(pi a/N), with y_0 = 0.

    Even m gives the cosine hat, odd m the sine hat.  The block d = N is
    identically zero under y_0 = 0.  At t = 0 the Bernoulli expression for even
    m overshoots the defining sum by (-1)^(k+1) N_d/2 (checked numerically for
    m <= 8), so that point is corrected explicitly.
    """
    n = _check(m, N, d)
    Nd = N // d
    t %= Nd
    if Nd == 1:
        return Fraction(0)
    k, odd = divmod(m, 2)
    if odd:
        return sum((coeff_A(k, s) * Fraction(Nd) ** (2 * s + 1) * _bernoulli_difference(2 * s + 1, t, Nd, n)
                    for s in range(k + 1)), Fraction(0))
    value = sum((coeff_a(k, s) * Fraction(Nd) ** (2 * s) * _bernoulli_difference(2 * s, t, Nd, n)
                 for s in range(1, k + 1)), Fraction(0))
    if t == 0:
        value -= (-1) ** (k + 1) * Fraction(Nd, 2)
    return value


def tangent_hat_integer(m: int, d: int, t: int, N: int) -> Fraction:
    """d * hat_d(t) in the integer closed form, for m = 1 and m = 2.

    m = 1: (N/2)(-1)^(t+1) for t != 0 mod N_d (and 0 at t = 0);
    m = 2: (N/2)(-1)^(t+1)(2t - N_d) for t != 0 mod N_d, and (N/2)(N_d - 1)
    at t = 0 where the Bernoulli expression needs the correction above.
    """
    _check(m, N, d)
    Nd = N // d
    t %= Nd
    if Nd == 1:
        return Fraction(0)
    sign = 1 if t % 2 else -1
    if m == 1:
        return Fraction(N, 2) * sign if t else Fraction(0)
    if m == 2:
        return Fraction(N, 2) * (sign * (2 * t - Nd) if t else Nd - 1)
    raise DomainError("integer closed forms exist for m = 1 and m = 2 only")


def tangent_lambda(m: int, d: int, chi: DirichletCharacter) -> CycloElement:
    """The normalized eigenvalue attached to (d, chi) through primitive B_{j,chi*}."""
    if chi.modulus != d:
        raise DomainError("chi must be a character mod d")
    if d % 2 == 0:
        raise DomainError("d must be odd")
    k, odd = divmod(m, 2)
    if chi.parity != (-1 if odd else 1):
        raise DomainError("character parity does not match the tangent exponent")
    prim = induce_primitive(chi)
    chi2 = root_value_exact(eval_char(chi, 2))
    primes = prime_divisors(d)
    total = CycloElement(1)
    terms = [(coeff_A(k, s), 2 * s + 1) for s in range(k + 1)] if odd else \
        [(coeff_a(k, s), 2 * s) for s in range(1, k + 1)]
    for c, j in terms:
        euler = CycloElement.rational(1)
        for p in primes:
            euler = euler * (1 - root_value_exact(eval_char(prim, p)) * p ** (j - 1))
        total = total + (1 - chi2 * 2 ** j) * gen_bernoulli_exact(j, prim) * euler * c
    return total


def tangent_prefactor(m: int, N: int) -> ClosedFormDet:
    n = _check(m, N)
    if m % 2:
        return ClosedFormDet(N, 0, (-1) ** (n * (n - 1) // 2), Fraction(n, 2), 0)
    return ClosedFormDet(N, 0, (-1) ** (n * (n + 1) // 2), Fraction(n + 1, 2), 0)


def tangent_factors(m: int, N: int, precision: int = 256) -> list[Factor]:
    _check(m, N)
    parity = -1 if m % 2 else 1
    lower = 2 if m % 2 else 1
    out = []
    for d in divisors(N):
        if d <= lower:
            continue
        for chi in characters_with_parity(d, parity):
            lam = tangent_lambda(m, d, chi)
            out.append(Factor(d, chi, lam.to_mpc(precision), lam))
    return out


def eigenvalue_product(factors: list[Factor]) -> Fraction:
    q = cyclo_product(f.algebraic for f in factors).rational_value()
    assert q is not None, "Galois-stable product must be rational"
    return q


def tangent_det_value(m: int, N: int, precision: int = 256) -> mpmath.mpf:
    """The factorized determinant alone, without the dense oracle."""
    q = eigenvalue_product(tangent_factors(m, N, precision))
    with mpmath.workprec(precision + 16):
        v = tangent_prefactor(m, N).evaluate(precision + 16) * mpmath.mpf(q.numerator) / q.denominator
    with mpmath.workprec(precision):
        return +v


def class_number_form(N: int, precision: int = 256):
    """det T_{1,N} through relative class numbers.

    Returns (value, exact rational part, {d: h^-}); the value is the exact part
    times sign 2^n N^(n/2).
    """
    n = _check(1, N)
    rational = Fraction(1)
    hs = {}
    for d in divisors(N):
        if d <= 2:
            continue
        cn = relative_class_number(d, max(precision, 512))
        hs[d] = cn.h_minus
        local = []
        for chi in characters_with_parity(d, -1):
            prim = induce_primitive(chi)
            el = 2 * root_value_exact(eval_char(prim, 2)) - 1
            for p in prime_divisors(d):
                el = el * (1 - root_value_exact(eval_char(prim, p)))
            local.append(el)
        q = cyclo_product(local).rational_value()
        assert q is not None, "Galois-stable product must be rational"
        rational *= Fraction(cn.h_minus, 2 * d * cn.Q) * q
    pre = ClosedFormDet(N, 0, (-1) ** (n * (n + 1) // 2), Fraction(n, 2), n)
    with mpmath.workprec(precision + 16):
        value = pre.evaluate(precision + 16) * mpmath.mpf(rational.numerator) / rational.denominator
    with mpmath.workprec(precision):
        return +value, rational, hs


def tangent_det_formula(m: int, N: int, precision: int = 256) -> FactorizationReport:
    """det T_{m,N} from the generalized-Bernoulli eigenvalue product.

    The product of the eigenvalues is rational and is formed exactly; for m = 1
    the class-number form is evaluated as a third value.
    """
    _check(m, N)
    precision = max(precision, tangent_precision(N))
    hi = precision + EXTRA_BITS
    prefactor = tangent_prefactor(m, N)
    factors = tangent_factors(m, N, precision)
    q = eigenvalue_product(factors)
    exact_zero = q == 0

    def assemble(p):
        with mpmath.workprec(p + 16):
            v = prefactor.evaluate(p + 16) * mpmath.mpf(q.numerator) / q.denominator
        with mpmath.workprec(p):
            return real_if_close(+v, p)

    assembled, assembled_hi = assemble(precision), assemble(hi)
    matrix = build_matrix(TangentPower(m, N), hi)
    oracle = real_if_close(det_numeric(matrix, hi).value, hi)
    scale = hadamard_bound(matrix, hi) if exact_zero else None
    rel, margin, passed = judge(assembled, assembled_hi, oracle, precision,
                                zero_scale=scale, exact_zero=exact_zero)
    extra = {"eigenvalue_product": str(q)}
    if m == 1:
        cn_value, cn_rational, hs = class_number_form(N, precision)
        n = (N - 1) // 2
        sign_ratio = prefactor.sign * (-1) ** (n * (n + 1) // 2)
        exact_match = cn_rational * 2 ** n == q * sign_ratio
        with mpmath.workprec(hi):
            if exact_zero:
                cn_rel = abs(cn_value) / scale
            else:
                cn_rel = max(abs(cn_value - oracle), abs(cn_value - assembled)) / abs(oracle)
        agrees = bool(exact_match and cn_rel < threshold(precision))
        extra.update({"class_number_form": mpmath.nstr(cn_value, 30),
                      "class_numbers": {str(d): h for d, h in hs.items()},
                      "class_number_rel_error": mpmath.nstr(cn_rel, 6),
                      "class_number_agrees": agrees})
        passed = passed and agrees
    return FactorizationReport(N=N, family=f"tan(m={m})", formula="tangent-generalized-bernoulli-product",
                               prefactor=prefactor, factors=factors, assembled=assembled,
                               oracle=oracle, rel_error=rel, precision=(precision, hi),
                               passed=passed, margin_bits=margin, zero_certified=exact_zero,
                               extra=extra)
