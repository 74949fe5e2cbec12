"""Determinant factorization reports and the shared pass/fail policy."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..characters import DirichletCharacter
from ..cyclotomic import CycloElement
from ..exactnum import agreement_bits, relative_difference
from ..matrices import ClosedFormDet, format_scalar

EXTRA_BITS = 128
# pass when the relative error is below 2^-(precision - PASS_SLACK_BITS)
PASS_SLACK_BITS = 40
CSV_COLUMNS = ("N", "family", "param", "assembled", "oracle", "rel_error", "pass")


@dataclass
class Factor:
    d: int
    chi: DirichletCharacter
    value: mpmath.mpc
    algebraic: CycloElement | None = None

    @property
    def rational(self) -> Fraction | None:
        return None if self.algebraic is None else self.algebraic.rational_value()

    def to_json(self, precision: int) -> dict:
        q = self.rational
        return {"d": self.d, "chi": list(self.chi.exponents), "chi_modulus": self.chi.modulus,
                "value": str(q) if q is not None else format_scalar(self.value, precision),
                "value_is_exact": q is not None}


@dataclass
class FactorizationReport:
    N: int
    family: str
    formula: str
    prefactor: ClosedFormDet
    factors: list[Factor]
    assembled: object
    oracle: object
    rel_error: object
    precision: tuple[int, int]
    passed: bool
    margin_bits: float = float("inf")
    zero_certified: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def param(self) -> str:
        if "(" in self.family:
            return self.family.split("=", 1)[1].rstrip(")")
        return ""

    def to_json(self) -> dict:
        p = self.precision[0]
        out = {
            "N": self.N,
            "family": self.family,
            "formula": self.formula,
            "prefactor": self.prefactor.to_json(),
            "factors": [f.to_json(p) for f in self.factors],
            "assembled": format_scalar(self.assembled, p),
            "oracle": format_scalar(self.oracle, self.precision[1]),
            "rel_error": format_scalar(self.rel_error, 64) if not isinstance(self.rel_error, Fraction)
            else str(self.rel_error),
            "precision_bits": list(self.precision),
            "margin_bits": None if self.margin_bits == float("inf") else round(self.margin_bits, 2),
            "zero_certified": self.zero_certified,
            "pass": self.passed,
        }
        for key, value in self.extra.items():
            out[key] = value
        return out

    def csv_row(self) -> dict:
        js = self.to_json()
        return {"N": self.N, "family": self.family.split("(")[0], "param": self.param,
                "assembled": js["assembled"], "oracle": js["oracle"],
                "rel_error": js["rel_error"], "pass": self.passed}


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(CSV_COLUMNS), extrasaction="ignore",
                            lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    return buf.getvalue()


def threshold(precision: int) -> mpmath.mpf:
    return mpmath.ldexp(1, -(precision - PASS_SLACK_BITS))


def judge(assembled_lo, assembled_hi, oracle, precision: int, *,
          zero_scale=None, exact_zero: bool = False):
    """Return (rel_error, margin_bits, passed).

    Exact Fractions on both sides must be equal.  When the assembled value is
    certified to vanish exactly, the numeric oracle is measured against
    ``zero_scale`` (a Hadamard bound) instead of against itself.
    """
    if isinstance(assembled_lo, Fraction) and isinstance(oracle, Fraction):
        if assembled_lo == oracle:
            return Fraction(0), float("inf"), True
        scale = max(abs(assembled_lo), abs(oracle))
        return abs(assembled_lo - oracle) / scale, float("inf"), False
    with mpmath.workprec(precision + EXTRA_BITS):
        a = _num(assembled_lo)
        o = _num(oracle)
        if exact_zero:
            rel = abs(o) / zero_scale if zero_scale else abs(o)
            margin = float("inf")
        else:
            rel = relative_difference(a, o)
            margin = agreement_bits(a, _num(assembled_hi)) if assembled_hi is not None else float("inf")
        passed = bool(rel < threshold(precision)) and margin >= precision - 16
        return rel, margin, passed


def _num(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpmathify(v)
