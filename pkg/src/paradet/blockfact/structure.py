"""Support of the transformed matrices, their block triangular structure and
the character factorization of the diagonal blocks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import mpmath
import numpy as np

from ..characters import DirichletCharacter, enumerate_characters, eval_char, eval_numeric
from ..cyclotomic import CycloElement, cyclo_product, reduce_array
from ..matrices import (ClosedFormDet, TransformKind, ValueAssignment, build_paratrophic,
                        build_matrix, build_transform, cosine_weight, det_exact, det_numeric,
                        hadamard_bound, tangent_precision, transform_det_closed)
from ..residues import DomainError, divisor_context, half_units, inv_mod, unit_group
from .report import EXTRA_BITS, Factor, FactorizationReport, judge

TRANSFORM_OF = {"X": "F", "Y": "C", "Z": "S"}


def _to_hp(v, precision: int):
    if isinstance(v, (int, Fraction)):
        v = Fraction(v)
        with mpmath.workprec(precision):
            return mpmath.mpf(v.numerator) / v.denominator
    return v


def _check_divisor(assignment: ValueAssignment, d: int) -> int:
    if d < 1 or assignment.N % d:
        raise DomainError(f"{d} does not divide N = {assignment.N}")
    return assignment.N // d


def scaled_hat(assignment: ValueAssignment, d: int, t: int) -> dict[int, object]:
    """Coordinates of (scale * hat_d(t)) on zeta_N^e, scale = 1, 4, 2i for X, Y, Z."""
    N = assignment.N
    Nd = _check_divisor(assignment, d)
    out: dict[int, object] = {}

    def add(e, c):
        e %= N
        out[e] = out.get(e, 0) + c

    kind = assignment.kind
    if kind == "X":
        for r in range(Nd):
            add(d * t * r, assignment.entry(d * r))
    elif kind == "Y":
        add(0, 2 * assignment.entry(0))
        if Nd % 2 == 0:
            add((N // 2) * t, 2 * assignment.entry(N // 2))
        for r in range(1, (Nd - 1) // 2 + 1):
            y = assignment.entry(d * r)
            add(d * t * r, 2 * y)
            add(-d * t * r, 2 * y)
    else:
        for r in range(1, (Nd - 1) // 2 + 1):
            z = assignment.entry(d * r)
            add(d * t * r, z)
            add(-d * t * r, -z)
    return out


def hat_exact(assignment: ValueAssignment, d: int, t: int) -> CycloElement:
    """The defining finite sum of hat_d(t) as an exact cyclotomic number."""
    if not assignment.exact:
        raise DomainError("exact hats need an exact assignment")
    N = assignment.N
    el = CycloElement(N, {e: Fraction(c) for e, c in scaled_hat(assignment, d, t).items()})
    inv = {"X": CycloElement.rational(1), "Y": CycloElement.rational(Fraction(1, 4)),
           "Z": CycloElement.root(3, 4, coeff=Fraction(1, 2))}[assignment.kind]
    return el * inv


def hat(assignment: ValueAssignment, d: int, t: int, precision: int = 256):
    """hat_d(t) evaluated at the given precision (the defining sum)."""
    Nd = _check_divisor(assignment, d)
    t %= Nd
    if assignment.exact:
        return hat_exact(assignment, d, t).to_mpc(precision)
    wp = precision + 16
    kind = assignment.kind
    with mpmath.workprec(wp):
        if kind == "X":
            total = mpmath.fsum(_to_hp(assignment.entry(d * r, wp), wp) * mpmath.expjpi(mpmath.mpf(2 * t * r) / Nd)
                                for r in range(Nd))
        elif kind == "Y":
            total = _to_hp(assignment.entry(0, wp), wp) / 2
            if Nd % 2 == 0:
                total += _to_hp(assignment.entry(assignment.N // 2, wp), wp) / 2 * (-1) ** t
            total += mpmath.fsum(_to_hp(assignment.entry(d * r, wp), wp) * mpmath.cospi(mpmath.mpf(2 * t * r) / Nd)
                                 for r in range(1, (Nd - 1) // 2 + 1))
        else:
            total = mpmath.fsum(_to_hp(assignment.entry(d * r, wp), wp) * mpmath.sinpi(mpmath.mpf(2 * t * r) / Nd)
                                for r in range(1, (Nd - 1) // 2 + 1))
    with mpmath.workprec(precision):
        return +total


def _entry_position(assignment: ValueAssignment, m: int, k: int):
    """None when the transformed entry vanishes, else (d, t) with entry d*hat_d(t)."""
    N = assignment.N
    d = math.gcd(k, N)
    if m % d:
        return None
    Nd = N // d
    u, v = m // d, k // d
    return d, (u * inv_mod(v, Nd)) % Nd


def transformed_entry(assignment: ValueAssignment, m: int, k: int, precision: int = 256):
    pos = _entry_position(assignment, m, k)
    if pos is None:
        return Fraction(0) if assignment.exact else mpmath.mpf(0)
    d, t = pos
    if assignment.exact:
        return hat_exact(assignment, d, t) * d
    with mpmath.workprec(precision):
        return d * hat(assignment, d, t, precision)


# --- block structure ------------------------------------------------------

def block_representatives(kind: str, Nd: int) -> list[int]:
    """u indexing the d-block: G_{N_d} for X, units in [1, N_d/2] for Y and Z."""
    if kind == "X":
        return list(unit_group(Nd).elements)
    if kind == "Z" and Nd <= 2:
        return []
    return half_units(Nd)


@dataclass
class Block:
    d: int
    reps: list[int]
    indices: list[int]
    matrix: list[list]


@dataclass
class BlockDecomposition:
    assignment: ValueAssignment
    blocks: list[Block]
    order: list[int]
    residual: object
    below_block_max: object
    exact: bool
    precision: int | None = None

    def block(self, d: int) -> Block:
        return next(b for b in self.blocks if b.d == d)


class StructureViolation(AssertionError):
    pass


def _scaled_transform_tensor(kind: str, N: int, idx: range) -> np.ndarray:
    """(rows, cols, N) integer coordinates of the scaled transform on zeta_N^e."""
    n = len(idx)
    T = np.zeros((n, n, N), dtype=np.int64)
    for a, m in enumerate(idx):
        for b, j in enumerate(idx):
            e = (m * j) % N
            if kind == "X":
                T[a, b, e] += 1
            elif kind == "Y":
                w = 2 * cosine_weight(j, N)
                T[a, b, e] += int(w)
                T[a, b, (-e) % N] += int(w)
            else:
                T[a, b, e] += 1
                T[a, b, (-e) % N] -= 1
    return T


def _exact_residual(assignment: ValueAssignment):
    """Compare scaled transform times matrix with the scaled predicted entries exactly.

    Returns the number of mismatching positions and the same count restricted
    to the asserted zeros.
    """
    N = assignment.N
    kind = assignment.kind
    idx = assignment.kind_range()
    if not idx:
        return 0, 0
    A = build_paratrophic(assignment)
    L = lcm(1, *(Fraction(v).denominator for r in A for v in r))
    A_int = np.array([[int(Fraction(v) * L) for v in r] for r in A], dtype=object)
    if all(abs(int(v)) < 2 ** 40 for v in A_int.flat):
        A_int = A_int.astype(np.int64)
    T = _scaled_transform_tensor(kind, N, idx)
    if A_int.dtype == object:
        T = T.astype(object)
    P = np.tensordot(T, A_int, axes=([1], [0]))  # (m, e, k)
    P = np.transpose(P, (0, 2, 1))
    E = np.zeros_like(P)
    zero_mask = np.zeros((len(idx), len(idx)), dtype=bool)
    hat_cache: dict = {}
    for a, m in enumerate(idx):
        for b, k in enumerate(idx):
            pos = _entry_position(assignment, m, k)
            if pos is None:
                zero_mask[a, b] = True
                continue
            if pos not in hat_cache:
                hat_cache[pos] = scaled_hat(assignment, *pos)
            d = pos[0]
            for e, c in hat_cache[pos].items():
                E[a, b, e] += d * int(Fraction(c) * L)
    diff = reduce_array(P - E, N)
    bad = np.any(diff != 0, axis=-1)
    return int(bad.sum()), int((bad & zero_mask).sum())


def _numeric_residual(assignment: ValueAssignment, precision: int):
    kind = assignment.kind
    N = assignment.N
    idx = assignment.kind_range()
    wp = precision + 16
    A = build_paratrophic(assignment, wp)
    T = build_transform(TransformKind(TRANSFORM_OF[kind], N, wp))
    with mpmath.workprec(wp):
        Am = mpmath.matrix([[_to_hp(v, wp) for v in r] for r in A])
        P = mpmath.matrix(T) * Am
        scale = max(abs(P[i, j]) for i in range(P.rows) for j in range(P.cols))
        resid = mpmath.mpf(0)
        zero_resid = mpmath.mpf(0)
        for a, m in enumerate(idx):
            for b, k in enumerate(idx):
                expected = transformed_entry(assignment, m, k, wp)
                delta = abs(P[a, b] - expected)
                resid = max(resid, delta)
                if _entry_position(assignment, m, k) is None:
                    zero_resid = max(zero_resid, delta)
        if scale:
            resid, zero_resid = resid / scale, zero_resid / scale
    return resid, zero_resid


def decompose(assignment: ValueAssignment, precision: int = 256, check: bool = True) -> BlockDecomposition:
    """Permute the transformed matrix into blocks (divisors in decreasing order).

    The residual is obtained by multiplying the transform against the built
    matrix and comparing with :func:`transformed_entry` everywhere.  Exact
    assignments are compared exactly in Q(zeta_N).
    """
    N = assignment.N
    kind = assignment.kind
    ctx = divisor_context(N)
    blocks = []
    order = []
    for d in ctx.divisors_block_order:
        Nd = N // d
        reps = block_representatives(kind, Nd)
        if not reps:
            continue
        indices = [(d * u) % N for u in reps]
        mat = []
        for u in reps:
            row = []
            for v in reps:
                t = (u * inv_mod(v, Nd)) % Nd
                if assignment.exact:
                    row.append(hat_exact(assignment, d, t) * d)
                else:
                    with mpmath.workprec(precision):
                        row.append(d * hat(assignment, d, t, precision))
            mat.append(row)
        blocks.append(Block(d, reps, indices, mat))
        order.extend(indices)
    if assignment.exact:
        bad, bad_zero = _exact_residual(assignment)
        residual, below = Fraction(bad), Fraction(bad_zero)
        ok = bad == 0
    else:
        residual, below = _numeric_residual(assignment, precision)
        ok = residual < mpmath.ldexp(1, -(precision - 32))
    if check and not ok:
        raise StructureViolation(f"transformed matrix of {assignment.label} (N={N}) "
                                 f"deviates from the predicted entries: residual {residual}")
    return BlockDecomposition(assignment, blocks, order, residual, below, assignment.exact,
                              None if assignment.exact else precision)


# --- character factorization ----------------------------------------------

def _required_parity(kind: str):
    return {"X": None, "Y": 1, "Z": -1}[kind]


def block_characters(kind: str, Nd: int) -> list[DirichletCharacter]:
    parity = _required_parity(kind)
    if kind == "Z" and Nd <= 2:
        return []
    return [chi for chi in enumerate_characters(Nd) if parity is None or chi.parity == parity]


def _has_exact_hats(assignment: ValueAssignment) -> bool:
    return assignment.exact or assignment.family == "tan"


def _exact_hat(assignment: ValueAssignment, d: int, t: int) -> CycloElement:
    if assignment.family == "tan":
        from .tangent import tangent_hat_closed  # the rational closed form
        return CycloElement.rational(tangent_hat_closed(assignment.param, d, t, assignment.N))
    return hat_exact(assignment, d, t)


def _check_character(assignment: ValueAssignment, d: int, chi: DirichletCharacter) -> int:
    Nd = _check_divisor(assignment, d)
    if chi.modulus != Nd:
        raise DomainError(f"character modulus {chi.modulus} != N/d = {Nd}")
    parity = _required_parity(assignment.kind)
    if parity is not None and chi.parity != parity:
        raise DomainError("character parity does not match the matrix kind")
    return Nd


def dedekind_factor_exact(assignment: ValueAssignment, d: int, chi: DirichletCharacter) -> CycloElement:
    if not _has_exact_hats(assignment):
        raise DomainError("exact factors need exact hat values")
    Nd = _check_character(assignment, d, chi)
    total = CycloElement(1)
    for t in block_representatives(assignment.kind, Nd):
        v = eval_char(chi, t)
        total = total + _exact_hat(assignment, d, t) * CycloElement.root(v.numerator, v.denominator)
    return total * d


def dedekind_factor(assignment: ValueAssignment, d: int, chi: DirichletCharacter, precision: int = 256):
    """d * sum_t hat_d(t) chi(t), t over G_{N_d} (X) or the half system (Y, Z)."""
    if _has_exact_hats(assignment):
        return dedekind_factor_exact(assignment, d, chi).to_mpc(precision)
    Nd = _check_character(assignment, d, chi)
    wp = precision + 16
    with mpmath.workprec(wp):
        total = mpmath.mpc(0)
        for t in block_representatives(assignment.kind, Nd):
            total += hat(assignment, d, t, wp) * eval_numeric(eval_char(chi, t), wp)
        total *= d
    with mpmath.workprec(precision):
        return +total


def _prefactor(assignment: ValueAssignment) -> ClosedFormDet:
    kind = assignment.kind
    N = assignment.N
    pre = transform_det_closed(TRANSFORM_OF[kind], N).inverse()
    if assignment.family == "tan" and kind == "Y":
        # bordered matrix: the d = N block is (N/2) y_0, divided out
        pre = pre * ClosedFormDet(N, 0, 1, Fraction(1), -1)
    return pre


def _factor_list(assignment: ValueAssignment, precision: int) -> list[Factor]:
    N = assignment.N
    out = []
    for d in divisor_context(N).divisors_block_order:
        if assignment.family == "tan" and assignment.kind == "Y" and d == N:
            continue
        for chi in block_characters(assignment.kind, N // d):
            if _has_exact_hats(assignment):
                alg = dedekind_factor_exact(assignment, d, chi)
                out.append(Factor(d, chi, alg.to_mpc(precision), alg))
            else:
                out.append(Factor(d, chi, dedekind_factor(assignment, d, chi, precision)))
    return out


def _product(values, precision):
    with mpmath.workprec(precision + 16):
        acc = mpmath.mpc(1)
        for v in values:
            acc *= v
    with mpmath.workprec(precision):
        return +acc


def real_if_close(v, precision: int):
    """Drop an imaginary part that is pure rounding noise."""
    if isinstance(v, mpmath.mpc) and abs(v.imag) <= mpmath.ldexp(abs(v), -(precision - 24)):
        return v.real
    return v


def det_via_factorization(assignment: ValueAssignment, precision: int = 256) -> FactorizationReport:
    """Assemble det from the block characters and compare with a direct oracle.

    With exact hats the product of the factors is formed exactly in a
    cyclotomic field, so a vanishing determinant is recognised as such.
    """
    N = assignment.N
    if assignment.family == "tan":
        precision = max(precision, tangent_precision(N))
    hi = precision + EXTRA_BITS
    prefactor = _prefactor(assignment)
    factors = _factor_list(assignment, precision)
    pre_q = prefactor.exact_value()
    exact_zero = False

    if all(f.algebraic is not None for f in factors):
        prod = cyclo_product(f.algebraic for f in factors)
        exact_zero = prod.is_zero()
        q = prod.rational_value()
        if q is not None and pre_q is not None:
            assembled = assembled_hi = pre_q * q
        else:
            def assemble(p):
                return real_if_close(_product([prod.to_mpc(p + 16), prefactor.evaluate(p + 16)], p), p)
            assembled, assembled_hi = assemble(precision), assemble(hi)
    else:
        def assemble(p):
            vals = [f.value for f in factors] if p == precision else \
                [dedekind_factor(assignment, f.d, f.chi, p) for f in factors]
            return real_if_close(_product(vals + [prefactor.evaluate(p + 16)], p), p)
        assembled, assembled_hi = assemble(precision), assemble(hi)

    if assignment.exact:
        matrix = build_matrix(assignment)
        oracle = det_exact(matrix)
    else:
        matrix = build_matrix(assignment, hi)
        oracle = real_if_close(det_numeric(matrix, hi).value, hi)
    if exact_zero and not isinstance(assembled, Fraction):
        assembled = assembled_hi = mpmath.mpf(0)
    scale = hadamard_bound(matrix, hi) if exact_zero else None
    rel, margin, passed = judge(assembled, assembled_hi, oracle, precision,
                                zero_scale=scale, exact_zero=exact_zero and not isinstance(oracle, Fraction))
    return FactorizationReport(N=N, family=assignment.label, formula="block-character-product",
                               prefactor=prefactor, factors=factors, assembled=assembled,
                               oracle=oracle, rel_error=rel, precision=(precision, hi),
                               passed=passed, margin_bits=margin, zero_certified=exact_zero)
