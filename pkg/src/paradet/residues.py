"""Residue bookkeeping for Z/NZ: divisors, unit groups, +-1 orbits, odd reduction."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class NotInvertibleError(DomainError):
    pass


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


@dataclass(frozen=True)
class DivisorContext:
    N: int
    divisors_block_order: tuple[int, ...]
    tau: int
    n_plus: int
    n_minus: int


def divisor_context(N: int) -> DivisorContext:
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    divs = tuple(sorted(divisors(N), reverse=True))
    return DivisorContext(N=N, divisors_block_order=divs, tau=len(divs),
                          n_plus=N // 2, n_minus=(N - 1) // 2)


def inv_mod(v: int, m: int) -> int:
    if m < 1:
        raise DomainError("modulus must be positive")
    if m == 1:
        return 0
    if math.gcd(v, m) != 1:
        raise NotInvertibleError(f"{v} is not invertible modulo {m}")
    return pow(v, -1, m)


def orbit_rep(a: int, N: int) -> int:
    """Representative in [0, N//2] of the orbit {a, -a} mod N."""
    a %= N
    return min(a, N - a) if a else 0


@dataclass(frozen=True)
class SignedIndex:
    sign: int
    rep: int


def signed_index(a: int, N: int) -> SignedIndex:
    """Odd reduction: z_<a> = sign * z_rep."""
    a %= N
    if a == 0 or 2 * a == N:
        return SignedIndex(0, 0)
    if a <= (N - 1) // 2:
        return SignedIndex(1, a)
    return SignedIndex(-1, N - a)


def _primitive_root_prime_power(p: int, e: int) -> int:
    pe = p ** e
    phi = pe - pe // p
    qs = prime_divisors(phi)
    for g in range(2, pe):
        if g % p == 0:
            continue
        if all(pow(g, phi // q, pe) != 1 for q in qs):
            return g
    raise AssertionError("no primitive root")  # unreachable for odd p


def _crt_lift(residue: int, modulus: int, m: int) -> int:
    """The unit mod m that is `residue` mod `modulus` and 1 mod the cofactor."""
    cof = m // modulus
    if cof == 1:
        return residue % m
    # x = residue (mod modulus), x = 1 (mod cof)
    x = residue + modulus * ((1 - residue) * inv_mod(modulus, cof) % cof)
    return x % m


@dataclass(frozen=True)
class UnitGroup:
    """(Z/mZ)^x with a CRT generating set.

    ``generators`` pairs each generator with its cyclic order; ``dlog`` maps
    every unit to its exponent vector in those generators.
    """

    modulus: int
    elements: tuple[int, ...]
    generators: tuple[tuple[int, int], ...]
    exponent: int
    dlog: dict[int, tuple[int, ...]] = field(repr=False, compare=False)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.generators)

    def __len__(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroup:
    if m < 1:
        raise DomainError("modulus must be positive")
    if m == 1:
        return UnitGroup(1, (1,), (), 1, {0: (), 1: ()})
    gens: list[tuple[int, int]] = []
    for p, e in sorted(factorize(m).items()):
        pe = p ** e
        if p == 2:
            if e == 2:
                gens.append((_crt_lift(3, 4, m), 2))
            elif e >= 3:
                gens.append((_crt_lift(pe - 1, pe, m), 2))
                gens.append((_crt_lift(5, pe, m), 2 ** (e - 2)))
        else:
            g = _primitive_root_prime_power(p, e)
            gens.append((_crt_lift(g, pe, m), pe - pe // p))
    dlog: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for _, o in gens)):
        x = 1
        for (g, _), k in zip(gens, exps):
            x = x * pow(g, k, m) % m
        if x in dlog:
            raise AssertionError(f"generators of (Z/{m})^x are not independent")
        dlog[x] = exps
    exponent = math.lcm(*(o for _, o in gens)) if gens else 1
    return UnitGroup(m, tuple(sorted(dlog)), tuple(gens), exponent, dlog)


def half_units(m: int) -> list[int]:
    """Representatives of (Z/mZ)^x / {+-1}: units in [1, m//2] (m >= 2), [1] for m = 1."""
    if m <= 2:
        return [1]
    return [u for u in range(1, m // 2 + 1) if math.gcd(u, m) == 1]
