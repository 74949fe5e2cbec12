"""Paratrophic matrices over Z/NZ, the Fourier/cosine/sine transforms and
determinant engines (exact Bareiss elimination, numeric LU)."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import mpmath

from .exactnum import periodic_bernoulli
from .residues import DomainError, orbit_rep, signed_index

FAMILIES = ("x", "y", "z", "bernoulli", "tan")
_KIND_OF = {"x": "X", "y": "Y", "z": "Z"}


def tangent_precision(N: int) -> int:
    return max(256, 12 * N)


@lru_cache(maxsize=None)
def _tan_powers(N: int, m: int, precision: int) -> tuple:
    with mpmath.workprec(precision + 16):
        vals = [mpmath.tan(mpmath.pi * a / N) ** m for a in range((N - 1) // 2 + 1)]
    with mpmath.workprec(precision):
        vals[0] = mpmath.mpf(0)
        return tuple(+v for v in vals)


@dataclass(frozen=True)
class ValueAssignment:
    """Values attached to Z/NZ that fill a paratrophic matrix.

    Generic families carry their vector in ``values``: x_0..x_{N-1} for "x",
    y_[0]..y_[N//2] for "y", z_1..z_{(N-1)//2} for "z".  The "bernoulli"
    and "tan" families are parametrized by ``param`` (k resp. m).
    """

    family: str
    N: int
    values: tuple = ()
    param: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.N < 2:
            raise DomainError("N must be >= 2")
        expected = {"x": self.N, "y": self.N // 2 + 1, "z": (self.N - 1) // 2}.get(self.family)
        if expected is not None and len(self.values) != expected:
            raise DomainError(f"family {self.family} over N={self.N} needs {expected} values")
        if self.family == "bernoulli" and self.param < 1:
            raise DomainError("Bernoulli index k must be >= 1")
        if self.family == "tan":
            if self.param < 1:
                raise DomainError("tangent exponent m must be >= 1")
            if self.N % 2 == 0 or self.N < 3:
                raise DomainError("tangent matrices need odd N >= 3")

    @property
    def kind(self) -> str:
        if self.family in _KIND_OF:
            return _KIND_OF[self.family]
        return "Y" if self.param % 2 == 0 else "Z"

    @property
    def exact(self) -> bool:
        if self.family == "tan":
            return False
        return all(isinstance(v, (int, Fraction)) for v in self.values)

    @property
    def label(self) -> str:
        if self.family == "bernoulli":
            return f"bernoulli(k={self.param})"
        if self.family == "tan":
            return f"tan(m={self.param})"
        return self.family

    def base_value(self, r: int, precision: int | None = None):
        """x_r, y_[r] or z_r for the representative r of the relevant index set."""
        N = self.N
        if self.family in ("x", "y"):
            return self.values[r]
        if self.family == "z":
            return self.values[r - 1]
        if self.family == "bernoulli":
            return periodic_bernoulli(self.param, Fraction(r, N))
        return _tan_powers(N, self.param, precision or tangent_precision(N))[r]

    def entry(self, a: int, precision: int | None = None):
        """x_{a mod N}, y_[a] or z_<a> according to the kind."""
        kind = self.kind
        if kind == "X":
            return self.base_value(a % self.N, precision)
        if kind == "Y":
            return self.base_value(orbit_rep(a, self.N), precision)
        si = signed_index(a, self.N)
        if si.sign == 0:
            return Fraction(0) if self.exact else mpmath.mpf(0)
        v = self.base_value(si.rep, precision)
        if si.sign > 0:
            return v
        # plain negation would round to the ambient mpmath precision
        return -v if isinstance(v, Fraction) else mpmath.fneg(v, exact=True)

    def kind_range(self) -> range:
        """Indices of X_N, Y_N or Z_N for this assignment's kind."""
        N = self.N
        return {"X": range(N), "Y": range(N // 2 + 1), "Z": range(1, (N - 1) // 2 + 1)}[self.kind]

    def index_range(self) -> range:
        """Row/column indices of the built matrix (T_{m,N} drops index 0)."""
        if self.family == "tan":
            return range(1, (self.N - 1) // 2 + 1)
        return self.kind_range()


def GenericX(values) -> ValueAssignment:
    return ValueAssignment("x", len(values), tuple(values))


def GenericY(values, N: int) -> ValueAssignment:
    return ValueAssignment("y", N, tuple(values))


def GenericZ(values, N: int) -> ValueAssignment:
    return ValueAssignment("z", N, tuple(values))


def random_assignment(family: str, N: int, rng: random.Random, bound: int = 9) -> ValueAssignment:
    """Random small rationals for the generic families x, y and z."""
    size = {"x": N, "y": N // 2 + 1, "z": (N - 1) // 2}.get(family)
    if size is None:
        raise DomainError(f"no random assignment for family {family!r}")
    values = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(size))
    return ValueAssignment(family, N, values)


def Bernoulli(k: int, N: int) -> ValueAssignment:
    return ValueAssignment("bernoulli", N, param=k)


def TangentPower(m: int, N: int) -> ValueAssignment:
    return ValueAssignment("tan", N, param=m)


def build_matrix(assignment: ValueAssignment, precision: int | None = None) -> list[list]:
    """X_N, Y_N, Z_N, B_{k,N} or T_{m,N} with entries indexed by products ij."""
    idx = assignment.index_range()
    return [[assignment.entry(i * j, precision) for j in idx] for i in idx]


def build_paratrophic(assignment: ValueAssignment, precision: int | None = None) -> list[list]:
    """The full X_N / Y_N / Z_N of the assignment's kind.

    Differs from :func:`build_matrix` only for even tangent powers, where the
    zero row and column of index 0 are kept.
    """
    idx = assignment.kind_range()
    return [[assignment.entry(i * j, precision) for j in idx] for i in idx]


# --- transforms -----------------------------------------------------------

@dataclass(frozen=True)
class TransformKind:
    kind: str  # "F", "C" or "S"
    N: int
    precision: int = 256

    def __post_init__(self):
        if self.kind not in ("F", "C", "S"):
            raise DomainError(f"unknown transform {self.kind!r}")
        if self.precision < 64:
            raise ValueError("precision must be >= 64 bits")

    def index_range(self) -> range:
        N = self.N
        return {"F": range(N), "C": range(N // 2 + 1), "S": range(1, (N - 1) // 2 + 1)}[self.kind]


def cosine_weight(n: int, N: int) -> Fraction:
    return Fraction(1, 2) if n == 0 or 2 * n == N else Fraction(1)


def build_transform(kind: TransformKind) -> list[list]:
    N, idx = kind.N, kind.index_range()
    with mpmath.workprec(kind.precision):
        if kind.kind == "F":
            def f(m, n):
                x = mpmath.mpf(2 * (m * n % N)) / N
                return mpmath.mpc(mpmath.cospi(x), mpmath.sinpi(x))
        elif kind.kind == "C":
            def f(m, n):
                w = cosine_weight(n, N)
                return mpmath.cospi(mpmath.mpf(2 * (m * n % N)) / N) * w.numerator / w.denominator
        else:
            def f(m, n):
                return mpmath.sinpi(mpmath.mpf(2 * (m * n % N)) / N)
        return [[f(m, n) for n in idx] for m in idx]


@dataclass(frozen=True)
class ClosedFormDet:
    """i^i_power * sign * N^power_of_N * 2^power_of_2."""

    N: int
    i_power: int
    sign: int
    power_of_N: Fraction
    power_of_2: int

    def evaluate(self, precision: int = 256):
        with mpmath.workprec(precision):
            mag = mpmath.power(self.N, mpmath.mpf(self.power_of_N.numerator) / self.power_of_N.denominator)
            mag = mpmath.ldexp(mag, self.power_of_2) * self.sign
            unit = [1, mpmath.mpc(0, 1), -1, mpmath.mpc(0, -1)][self.i_power % 4]
            return unit * mag

    def inverse(self) -> "ClosedFormDet":
        return ClosedFormDet(self.N, (-self.i_power) % 4, self.sign,
                             -self.power_of_N, -self.power_of_2)

    def __mul__(self, other: "ClosedFormDet") -> "ClosedFormDet":
        assert self.N == other.N
        return ClosedFormDet(self.N, (self.i_power + other.i_power) % 4, self.sign * other.sign,
                             self.power_of_N + other.power_of_N, self.power_of_2 + other.power_of_2)

    def exact_value(self) -> Fraction | None:
        """The value as a Fraction when it is rational."""
        if self.i_power % 2:
            return None
        p = self.power_of_N
        if p.denominator != 1:
            root = _exact_root(self.N, p.denominator)
            if root is None:
                return None
            base, expo = Fraction(root), p.numerator
        else:
            base, expo = Fraction(self.N), p.numerator
        sign = self.sign * (-1 if self.i_power % 4 == 2 else 1)
        return sign * base ** expo * Fraction(2) ** self.power_of_2

    def to_json(self) -> dict:
        return {"i_power": self.i_power % 4, "sign": self.sign,
                "pow_N": str(self.power_of_N), "pow_2": self.power_of_2}


def _exact_root(n: int, r: int) -> int | None:
    x = round(n ** (1.0 / r))
    for c in (x - 1, x, x + 1):
        if c >= 0 and c ** r == n:
            return c
    return None


def transform_det_closed(kind: str, N: int) -> ClosedFormDet:
    if kind == "F":
        return ClosedFormDet(N, ((N - 1) * (3 * N - 2) // 2) % 4, 1, Fraction(N, 2), 0)
    if kind == "C":
        p = N // 2
        return ClosedFormDet(N, 0, (-1) ** (p * (p + 1) // 2 % 2), Fraction(p + 1, 2), -(p + 1))
    if kind == "S":
        q = (N - 1) // 2
        return ClosedFormDet(N, 0, (-1) ** (q * (q - 1) // 2 % 2), Fraction(q, 2), -q)
    raise DomainError(f"unknown transform {kind!r}")


# --- determinants ---------------------------------------------------------

def det_integer(rows) -> int:
    """Bareiss fraction-free elimination; every intermediate stays integral."""
    A = [list(map(int, r)) for r in rows]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def det_exact(rows) -> Fraction:
    """Exact determinant of a rational matrix (rows scaled to integers first)."""
    rows = [[Fraction(v) for v in r] for r in rows]
    scale = Fraction(1)
    int_rows = []
    for r in rows:
        L = lcm(1, *(v.denominator for v in r))
        scale *= L
        int_rows.append([v.numerator * (L // v.denominator) for v in r])
    return Fraction(det_integer(int_rows)) / scale


@dataclass(frozen=True)
class NumericDet:
    value: mpmath.mpc
    precision: int
    singular: bool
    min_pivot_ratio: mpmath.mpf


def det_numeric(rows, precision: int = 256) -> NumericDet:
    """LU with partial pivoting at the working precision.

    A pivot smaller than 2^-(precision-16) times the largest entry sets
    ``singular``; the (tiny) value is still returned.
    """
    n = len(rows)
    with mpmath.workprec(precision):
        if n == 0:
            return NumericDet(mpmath.mpf(1), precision, False, mpmath.mpf(1))
        A = [[mpmath.mpmathify(v) for v in r] for r in rows]
        scale = max(abs(v) for r in A for v in r)
        floor = mpmath.ldexp(scale, -(precision - 16))
        det = mpmath.mpf(1)
        min_ratio = mpmath.inf
        singular = scale == 0
        for k in range(n):
            p = max(range(k, n), key=lambda i: abs(A[i][k]))
            if p != k:
                A[k], A[p] = A[p], A[k]
                det = -det
            piv = A[k][k]
            if scale:
                min_ratio = min(min_ratio, abs(piv) / scale)
            if abs(piv) <= floor:
                singular = True
                if piv == 0:
                    return NumericDet(mpmath.mpf(0), precision, True, mpmath.mpf(0))
            det *= piv
            rowk = A[k]
            for i in range(k + 1, n):
                rowi = A[i]
                f = rowi[k] / piv
                if f:
                    for j in range(k + 1, n):
                        rowi[j] -= f * rowk[j]
        return NumericDet(det, precision, singular, min_ratio)


def hadamard_bound(rows, precision: int = 256) -> mpmath.mpf:
    with mpmath.workprec(precision):
        out = mpmath.mpf(1)
        for r in rows:
            out *= mpmath.sqrt(mpmath.fsum(abs(mpmath.mpmathify(v)) ** 2 for v in r))
        return out


# --- dump format ----------------------------------------------------------

def format_scalar(v, precision: int | None = None) -> str:
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    bits = precision or mpmath.mp.prec
    digits = max(15, int(bits * 0.30103))
    with mpmath.workprec(bits + 16):
        if isinstance(v, mpmath.mpc):
            if v.imag == 0:
                return mpmath.nstr(v.real, digits)
            sign = "+" if v.imag >= 0 else "-"
            return f"{mpmath.nstr(v.real, digits)}{sign}{mpmath.nstr(abs(v.imag), digits)}j"
        return mpmath.nstr(v, digits)


def dump_matrix(rows, precision: int | None = None) -> str:
    """Row-major JSON: exact entries as "p/q", numeric ones as decimals."""
    exact = all(isinstance(v, (int, Fraction)) for r in rows for v in r)
    payload = {"precision": None if exact else precision,
               "entries": [[format_scalar(v, precision) for v in r] for r in rows]}
    return json.dumps(payload)


def load_matrix(text: str) -> list[list]:
    payload = json.loads(text)
    prec = payload.get("precision")
    if prec is None:
        return [[Fraction(s) for s in r] for r in payload["entries"]]
    with mpmath.workprec(prec):
        return [[mpmath.mpmathify(s) for s in r] for r in payload["entries"]]
