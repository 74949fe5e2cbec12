"""Exact elements of Q(zeta_M) for the structural identities.

Elements are stored unreduced as rational coefficients on zeta_M^e,
0 <= e < M; equality is decided after reduction modulo the M-th cyclotomic
polynomial, which gives the canonical power-basis coordinates.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .residues import divisors


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_M, constant term first."""
    poly = [-1] + [0] * (M - 1) + [1]
    for d in divisors(M):
        if d < M:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def reduction_table(M: int) -> np.ndarray:
    """Row e holds the power-basis coordinates of zeta_M^e (int64)."""
    phi = list(cyclotomic_poly(M))
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(M):
        rows.append(cur)
        nxt = [0] + cur[:-1]
        lead = cur[-1]
        if lead:
            nxt = [a - lead * b for a, b in zip(nxt, phi[:-1])]
        cur = nxt
    table = np.array(rows, dtype=object)
    if max(abs(int(v)) for v in table.flat) < 2 ** 20:
        return table.astype(np.int64)
    return table


def reduce_array(arr: np.ndarray, M: int) -> np.ndarray:
    """Reduce integer arrays of shape (..., M) to power-basis coordinates.

    Falls back to Python integers when int64 could overflow.
    """
    table = reduction_table(M)
    bound = int(np.abs(arr).max(initial=0)) if arr.size else 0
    if arr.dtype != object and table.dtype != object and bound * M * 2 ** 20 < 2 ** 62:
        return arr.astype(np.int64) @ table
    return arr.astype(object) @ table.astype(object)


@lru_cache(maxsize=512)
def root_table(M: int, precision: int) -> tuple:
    """exp(2 pi i e/M) for 0 <= e < M."""
    with mpmath.workprec(precision):
        out = []
        for e in range(M):
            x = mpmath.mpf(2 * e) / M
            out.append(mpmath.mpc(mpmath.cospi(x), mpmath.sinpi(x)))
        return tuple(out)


class CycloElement:
    """sum_e c_e zeta_M^e with rational c_e."""

    __slots__ = ("M", "coeffs")

    def __init__(self, M: int, coeffs: dict[int, Fraction] | None = None):
        self.M = M
        self.coeffs: dict[int, Fraction] = {}
        for e, c in (coeffs or {}).items():
            if c:
                key = e % M
                self.coeffs[key] = self.coeffs.get(key, 0) + Fraction(c)

    @classmethod
    def rational(cls, q, M: int = 1) -> "CycloElement":
        return cls(M, {0: Fraction(q)})

    @classmethod
    def root(cls, num: int, den: int, M: int | None = None, coeff=1) -> "CycloElement":
        """coeff * exp(2 pi i num/den), embedded in Q(zeta_M)."""
        M = M or den
        assert M % den == 0
        return cls(M, {num * (M // den): Fraction(coeff)})

    def lift(self, M: int) -> "CycloElement":
        if M == self.M:
            return self
        assert M % self.M == 0
        s = M // self.M
        return CycloElement(M, {e * s: c for e, c in self.coeffs.items()})

    def _common(self, other: "CycloElement"):
        M = math.lcm(self.M, other.M)
        return self.lift(M), other.lift(M), M

    def __add__(self, other):
        if not isinstance(other, CycloElement):
            other = CycloElement.rational(other)
        a, b, M = self._common(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, 0) + c
        return CycloElement(M, out)

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.M, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycloElement):
            q = Fraction(other)
            return CycloElement(self.M, {e: c * q for e, c in self.coeffs.items()})
        a, b, M = self._common(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                k = (e1 + e2) % M
                out[k] = out.get(k, 0) + c1 * c2
        return CycloElement(M, out)

    __rmul__ = __mul__

    def reduced(self) -> tuple[Fraction, ...]:
        """Canonical coordinates in the power basis of Q(zeta_M)."""
        table = reduction_table(self.M)
        deg = table.shape[1]
        out = [Fraction(0)] * deg
        for e, c in self.coeffs.items():
            row = table[e]
            for j in range(deg):
                r = int(row[j])
                if r:
                    out[j] += c * r
        return tuple(out)

    def canonical(self) -> "CycloElement":
        """The same number written on the power basis 1, zeta, ..., zeta^(phi-1)."""
        return CycloElement(self.M, dict(enumerate(self.reduced())))

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElement):
            other = CycloElement.rational(other)
        return (self - other).is_zero()

    __hash__ = None

    def rational_value(self) -> Fraction | None:
        """The value as a Fraction when the element lies in Q, else None."""
        red = self.reduced()
        if any(red[1:]):
            return None
        return red[0]

    def to_mpc(self, precision: int) -> mpmath.mpc:
        wp = precision + 16 + 2 * max(4, self.M.bit_length())
        roots = root_table(self.M, wp)
        with mpmath.workprec(wp):
            total = mpmath.mpc(0)
            for e, c in self.coeffs.items():
                total += (mpmath.mpf(c.numerator) / c.denominator) * roots[e]
        with mpmath.workprec(precision):
            return +total

    def __repr__(self):
        terms = " + ".join(f"{c}*z^{e}" for e, c in sorted(self.coeffs.items()))
        return f"CycloElement(M={self.M}: {terms or '0'})"


def cyclo_product(elements) -> CycloElement:
    """Exact product, reduced after every step to keep the support small."""
    elements = list(elements)
    M = math.lcm(1, *(e.M for e in elements))
    acc = CycloElement.rational(1, M)
    for e in elements:
        acc = (acc * e.lift(M)).canonical()
    return acc
