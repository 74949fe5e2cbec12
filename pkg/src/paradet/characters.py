"""Dirichlet characters as exponent vectors over the CRT generators of (Z/mZ)^x.

Values are carried exactly as fractions of a full turn; numeric evaluation
happens only on request.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .residues import divisors, unit_group


@dataclass(frozen=True)
class RootOfUnityValue:
    """Either zero or exp(2 pi i numerator/denominator)."""

    is_zero: bool
    numerator: int = 0
    denominator: int = 1

    @classmethod
    def zero(cls) -> "RootOfUnityValue":
        return cls(True, 0, 1)

    @classmethod
    def turn(cls, frac: Fraction) -> "RootOfUnityValue":
        frac %= 1
        return cls(False, frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __mul__(self, other: "RootOfUnityValue") -> "RootOfUnityValue":
        if self.is_zero or other.is_zero:
            return RootOfUnityValue.zero()
        return RootOfUnityValue.turn(self.fraction + other.fraction)

    def conjugate(self) -> "RootOfUnityValue":
        if self.is_zero:
            return self
        return RootOfUnityValue.turn(-self.fraction)

    def is_one(self) -> bool:
        return not self.is_zero and self.numerator == 0

    def as_sign(self) -> int | None:
        """+-1 or 0 when the value is real, else None."""
        if self.is_zero:
            return 0
        if self.denominator == 1:
            return 1
        if self.denominator == 2:
            return -1
        return None


def eval_numeric(value: RootOfUnityValue, precision: int = 256) -> mpmath.mpc:
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    with mpmath.workprec(precision):
        if value.is_zero:
            return mpmath.mpc(0)
        # cospi/sinpi are exact at multiples of 1/2
        x = mpmath.mpf(2 * value.numerator) / value.denominator
        return mpmath.mpc(mpmath.cospi(x), mpmath.sinpi(x))


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    @property
    def group(self):
        return unit_group(self.modulus)

    def __call__(self, a: int) -> RootOfUnityValue:
        return eval_char(self, a)

    @property
    def order(self) -> int:
        return math.lcm(1, *(o // math.gcd(o, k)
                             for k, o in zip(self.exponents, self.group.orders)))

    @property
    def parity(self) -> int:
        return 1 if eval_char(self, -1).is_one() else -1

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @property
    def conductor(self) -> int:
        return conductor(self)

    def is_primitive(self) -> bool:
        return conductor(self) == self.modulus

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(
            (-k) % o for k, o in zip(self.exponents, self.group.orders)))


def trivial_character(m: int) -> DirichletCharacter:
    return DirichletCharacter(m, (0,) * len(unit_group(m).generators))


@lru_cache(maxsize=None)
def enumerate_characters(m: int) -> tuple[DirichletCharacter, ...]:
    """All phi(m) characters mod m, lexicographic in the exponent vector."""
    G = unit_group(m)
    return tuple(DirichletCharacter(m, exps)
                 for exps in itertools.product(*(range(o) for o in G.orders)))


def characters_with_parity(m: int, parity: int) -> list[DirichletCharacter]:
    return [chi for chi in enumerate_characters(m) if chi.parity == parity]


def eval_char(chi: DirichletCharacter, a: int) -> RootOfUnityValue:
    m = chi.modulus
    a %= m
    if math.gcd(a, m) != 1:
        return RootOfUnityValue.zero()
    G = unit_group(m)
    turn = sum((Fraction(k * e, o) for k, e, o in
                zip(chi.exponents, G.dlog[a], G.orders)), Fraction(0))
    return RootOfUnityValue.turn(turn)


def _lift_unit(b: int, f: int, m: int) -> int:
    for j in range(m // f):
        a = b + f * j
        if math.gcd(a, m) == 1:
            return a
    raise AssertionError(f"no unit lift of {b} mod {f} to mod {m}")


@lru_cache(maxsize=None)
def conductor(chi: DirichletCharacter) -> int:
    m = chi.modulus
    units = unit_group(m).elements
    for f in divisors(m):
        if all(eval_char(chi, a).is_one() for a in units if a % f == 1 % f):
            return f
    return m


@lru_cache(maxsize=None)
def induce_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) that induces chi."""
    f = conductor(chi)
    if f == chi.modulus:
        return chi
    H = unit_group(f)
    exps = []
    for g, order in H.generators:
        value = eval_char(chi, _lift_unit(g, f, chi.modulus))
        k = value.fraction * order
        assert k.denominator == 1
        exps.append(int(k))
    return DirichletCharacter(f, tuple(exps))
