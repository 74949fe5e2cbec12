"""Hurwitz zeta, Dirichlet L-values at positive integers, generalized
Bernoulli numbers and relative class numbers of cyclotomic fields."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .characters import (DirichletCharacter, RootOfUnityValue, characters_with_parity,
                         eval_char, eval_numeric, induce_primitive)
from .cyclotomic import CycloElement
from .exactnum import PrecisionError, bernoulli_number, bernoulli_poly
from .residues import DomainError, factorize, prime_divisors

GUARD_BITS = 24


@lru_cache(maxsize=4096)
def hurwitz_zeta(k: int, a: Fraction, precision: int = 256) -> mpmath.mpf:
    """zeta(k, a) = sum_{n>=0} (n + a)^-k by Euler-Maclaurin summation."""
    a = Fraction(a)
    if k < 2:
        raise DomainError("hurwitz_zeta needs k >= 2")
    if a <= 0 or a > 1:
        raise DomainError("hurwitz_zeta needs 0 < a <= 1")
    wp = precision + GUARD_BITS
    with mpmath.workprec(wp):
        x = mpmath.mpf(a.numerator) / a.denominator
        # the asymptotic tail reaches 2^-wp only if 2 pi M / e > wp log 2
        M = int(0.35 * wp) + 10
        head = mpmath.fsum((x + n) ** (-k) for n in range(M))
        X = x + M
        tail = X ** (1 - k) / (k - 1) + X ** (-k) / 2
        eps = mpmath.ldexp(abs(head), -wp)
        poch = mpmath.mpf(k)  # k (k+1) ... (k+2j-2)
        Xpow = X ** (-k - 1)
        inv_X2 = 1 / (X * X)
        last = None
        for j in range(1, 4 * wp):
            term = mpmath.mpf(bernoulli_number(2 * j).numerator) / bernoulli_number(2 * j).denominator
            term = term / math.factorial(2 * j) * poch * Xpow
            if last is not None and abs(term) > abs(last):
                raise PrecisionError(f"Euler-Maclaurin tail diverged for zeta({k}, {a})")
            tail += term
            if abs(term) < eps:
                break
            last = term
            poch *= (k + 2 * j - 1) * (k + 2 * j)
            Xpow *= inv_X2
        else:
            raise PrecisionError("Euler-Maclaurin tail did not converge")
        result = head + tail
    with mpmath.workprec(precision):
        return +result


def riemann_zeta(k: int, precision: int = 256) -> mpmath.mpf:
    return hurwitz_zeta(k, Fraction(1), precision)


@dataclass(frozen=True)
class LValue:
    k: int
    character: DirichletCharacter
    value: mpmath.mpc
    method: str
    precision: int


def _cot_sum(chi: DirichletCharacter, precision: int) -> mpmath.mpc:
    m = chi.modulus
    with mpmath.workprec(precision + GUARD_BITS):
        total = mpmath.mpc(0)
        for t in range(1, m):
            v = eval_char(chi, t)
            if not v.is_zero:
                total += eval_numeric(v, precision + GUARD_BITS) * mpmath.cot(mpmath.pi * t / m)
        return total


def dirichlet_L(k: int, chi: DirichletCharacter, precision: int = 256) -> LValue:
    """L(k, chi) = sum chi(n) n^-k for the (possibly imprimitive) character chi."""
    m = chi.modulus
    wp = precision + GUARD_BITS
    if k == 1:
        if chi.parity != -1:
            raise DomainError("L(1, chi) is only provided for odd chi")
        with mpmath.workprec(wp):
            value = mpmath.pi / (2 * m) * _cot_sum(chi, precision)
        method = "cotangent-sum"
    elif k >= 2:
        with mpmath.workprec(wp):
            total = mpmath.mpc(0)
            for t in range(1, m + 1):
                v = eval_char(chi, t)
                if not v.is_zero:
                    total += eval_numeric(v, wp) * hurwitz_zeta(k, Fraction(t, m), wp)
            value = total / mpmath.mpf(m) ** k
        method = "hurwitz-sum"
    else:
        raise DomainError("k must be >= 1")
    with mpmath.workprec(precision):
        return LValue(k, chi, +value, method, precision)


def paired_hurwitz_sum(k: int, chi: DirichletCharacter, precision: int = 256) -> mpmath.mpc:
    """sum_{t=1}^{m} chi(t) (zeta(k, t/m) + chi(-1) zeta(k, 1 - t/m)), which equals 2 m^k L(k, chi)."""
    m = chi.modulus
    sign = chi.parity
    wp = precision + GUARD_BITS
    with mpmath.workprec(wp):
        total = mpmath.mpc(0)
        for t in range(1, m):
            v = eval_char(chi, t)
            if v.is_zero:
                continue
            a = Fraction(t, m)
            total += eval_numeric(v, wp) * (hurwitz_zeta(k, a, wp) + sign * hurwitz_zeta(k, 1 - a, wp))
    with mpmath.workprec(precision):
        return +total


@lru_cache(maxsize=None)
def gen_bernoulli_exact(m: int, chi: DirichletCharacter) -> CycloElement:
    """B_{m,chi} = f^{m-1} sum_{a=1}^{f} chi(a) B_m(a/f), f the modulus of chi."""
    if m < 1:
        raise DomainError("m must be >= 1")
    f = chi.modulus
    coeffs: dict[Fraction, Fraction] = {}
    for a in range(1, f + 1):
        v = eval_char(chi, a)
        if v.is_zero:
            continue
        coeffs[v.fraction] = coeffs.get(v.fraction, Fraction(0)) + bernoulli_poly(m, Fraction(a, f))
    order = chi.order
    scale = Fraction(f) ** (m - 1)
    return CycloElement(order, {int(turn * order): c * scale for turn, c in coeffs.items()})


@dataclass(frozen=True)
class GenBernoulli:
    m: int
    character: DirichletCharacter
    value: mpmath.mpc
    exact: CycloElement


def gen_bernoulli(m: int, chi: DirichletCharacter, precision: int = 256) -> GenBernoulli:
    exact = gen_bernoulli_exact(m, chi)
    return GenBernoulli(m, chi, exact.to_mpc(precision), exact)


def root_value_exact(v: RootOfUnityValue) -> CycloElement:
    if v.is_zero:
        return CycloElement(1)
    return CycloElement.root(v.numerator, v.denominator)


def induction_factor_exact(chi: DirichletCharacter, m: int, target_modulus: int) -> CycloElement:
    """prod over primes p | target_modulus of (1 - chi*(p) p^{m-1})."""
    prim = induce_primitive(chi)
    if target_modulus % prim.modulus:
        raise DomainError("conductor must divide the target modulus")
    out = CycloElement.rational(1)
    for p in prime_divisors(target_modulus):
        out = out * (1 - root_value_exact(eval_char(prim, p)) * p ** (m - 1))
    return out


def induction_factor(chi: DirichletCharacter, m: int, target_modulus: int,
                     precision: int = 256) -> mpmath.mpc:
    return induction_factor_exact(chi, m, target_modulus).to_mpc(precision)


@dataclass(frozen=True)
class ClassNumber:
    d: int
    h_minus: int
    Q: int
    w: int
    residual: mpmath.mpf
    value: mpmath.mpc


def _is_prime_power(d: int) -> bool:
    return len(factorize(d)) == 1


def hasse_unit_index(d: int) -> int:
    return 1 if _is_prime_power(d) else 2


def roots_of_unity_count(d: int) -> int:
    return 2 * d if d % 2 else d


def relative_class_number(d: int, precision: int = 256) -> ClassNumber:
    """h^-(Q(zeta_d)) = Q w prod_{chi odd mod d} (-B_{1,chi*}/2), rounded and certified."""
    if d < 3 or d % 4 == 2:
        raise DomainError(f"d = {d} is not a canonical cyclotomic conductor")
    Q, w = hasse_unit_index(d), roots_of_unity_count(d)
    wp = precision + GUARD_BITS
    with mpmath.workprec(wp):
        prod = mpmath.mpc(Q * w)
        for chi in characters_with_parity(d, -1):
            prod *= -gen_bernoulli(1, induce_primitive(chi), wp).value / 2
        h = int(mpmath.nint(prod.real))
        residual = abs(prod - h)
    if h <= 0 or residual > mpmath.ldexp(1, -(precision // 2)):
        raise PrecisionError(f"h^- for d = {d} did not round cleanly (residual {mpmath.nstr(residual, 5)})")
    return ClassNumber(d, h, Q, w, residual, prod)
