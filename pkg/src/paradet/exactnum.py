"""Exact rational combinatorics and the managed-precision numeric layer.

Rationals are :class:`fractions.Fraction`; high-precision reals and complexes
are mpmath values produced under an explicit bit precision.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath

MIN_PRECISION = 64

_lock = threading.Lock()
_bernoulli_numbers: list[Fraction] = [Fraction(1)]


class PrecisionError(ArithmeticError):
    """A result could not be certified at the requested precision."""


def bernoulli_number(m: int) -> Fraction:
    """B_m with the B_1 = -1/2 convention."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m >= len(_bernoulli_numbers):
        with _lock:
            B = _bernoulli_numbers
            for j in range(len(B), m + 1):
                # sum_{i<=j} C(j+1, i) B_i = 0
                B.append(-sum((comb(j + 1, i) * B[i] for i in range(j)),
                              Fraction(0)) / (j + 1))
    return _bernoulli_numbers[m]


@lru_cache(maxsize=None)
def bernoulli_coefficients(m: int) -> tuple[Fraction, ...]:
    """Coefficients of B_m(x), constant term first."""
    return tuple(comb(m, j) * bernoulli_number(m - j) for j in range(m + 1))


def _horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def bernoulli_poly(m: int, x) -> Fraction:
    return _horner(bernoulli_coefficients(m), Fraction(x))


def periodic_bernoulli(k: int, x) -> Fraction:
    """B_k({x}), with the value at integers set to 0 when k = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    x = Fraction(x)
    frac = x - (x.numerator // x.denominator)
    if k == 1 and frac == 0:
        return Fraction(0)
    return bernoulli_poly(k, frac)


def _series_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[:n - i]):
                out[i + j] += ai * bj
    return out


@lru_cache(maxsize=None)
def _todd_power(l: int, n: int) -> tuple[Fraction, ...]:
    """First n coefficients of (t/(e^t - 1))^l."""
    base = [bernoulli_number(j) / factorial(j) for j in range(n)]
    acc = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(l):
        acc = _series_mul(acc, base, n)
    return tuple(acc)


def norlund_poly(l: int, j: int, x) -> Fraction:
    """Higher-order Bernoulli polynomial B_j^{(l)}(x): j! [t^j] (t/(e^t-1))^l e^{xt}."""
    if l < 0 or j < 0:
        raise ValueError("l and j must be nonnegative")
    x = Fraction(x)
    todd = _todd_power(l, j + 1)
    total = sum((todd[i] * x ** (j - i) / factorial(j - i) for i in range(j + 1)),
                Fraction(0))
    return total * factorial(j)


@lru_cache(maxsize=None)
def coeff_a(k: int, s: int) -> Fraction:
    """Cosine-transform coefficient of tan^{2k} against B_{2s}."""
    if k < 1 or not 1 <= s <= k:
        raise ValueError(f"coeff_a needs k >= 1 and 1 <= s <= k, got ({k}, {s})")
    inner = sum((comb(2 * k, a) * norlund_poly(2 * k, 2 * k - 2 * s, a)
                 for a in range(2 * k + 1)), Fraction(0))
    return (Fraction((-1) ** k, 2 * factorial(2 * k - 1)) * comb(2 * k - 1, 2 * s - 1)
            * Fraction(1, 2 * s) * inner)


@lru_cache(maxsize=None)
def coeff_A(k: int, s: int) -> Fraction:
    """Sine-transform coefficient of tan^{2k+1} against B_{2s+1}."""
    if k < 0 or not 0 <= s <= k:
        raise ValueError(f"coeff_A needs k >= 0 and 0 <= s <= k, got ({k}, {s})")
    inner = sum((comb(2 * k + 1, b) * norlund_poly(2 * k + 1, 2 * k - 2 * s, b)
                 for b in range(2 * k + 2)), Fraction(0))
    return (Fraction((-1) ** (k + 1), 2 * factorial(2 * k)) * comb(2 * k, 2 * s)
            * Fraction(1, 2 * s + 1) * inner)


def euler_poly(m: int, x) -> Fraction:
    """E_m(x) = (2/(m+1)) (B_{m+1}(x) - 2^{m+1} B_{m+1}(x/2))."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = Fraction(x)
    return Fraction(2, m + 1) * (bernoulli_poly(m + 1, x)
                                 - 2 ** (m + 1) * bernoulli_poly(m + 1, x / 2))


@dataclass(frozen=True)
class HPContext:
    """Evaluation context at a fixed bit precision."""

    precision: int

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION} bits")

    def workprec(self):
        return mpmath.workprec(self.precision)

    def pi(self) -> mpmath.mpf:
        with self.workprec():
            return +mpmath.pi

    def convert(self, q) -> mpmath.mpf:
        q = Fraction(q)
        with self.workprec():
            return mpmath.mpf(q.numerator) / q.denominator

    def raised(self, extra: int = 128) -> "HPContext":
        return HPContext(self.precision + extra)


def hp_context(precision: int) -> HPContext:
    return HPContext(precision)


def relative_difference(a, b) -> mpmath.mpf:
    """|a - b| / max(|a|, |b|), 0 when both vanish."""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return mpmath.mpf(0)
    return abs(a - b) / scale


def agreement_bits(a, b) -> float:
    """Number of leading bits on which a and b agree (inf when identical)."""
    rel = relative_difference(a, b)
    if rel == 0:
        return float("inf")
    return float(-mpmath.log(rel, 2))
