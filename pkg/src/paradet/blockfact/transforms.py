"""Closed-form determinants of the Fourier, cosine and sine transforms against
LU on the explicit matrices."""

from __future__ import annotations

from ..matrices import TransformKind, build_transform, det_numeric, transform_det_closed
from .report import EXTRA_BITS, FactorizationReport, judge
from .structure import real_if_close

TRANSFORM_KINDS = ("F", "C", "S")


def transform_det_check(kind: str, N: int, precision: int = 256) -> FactorizationReport:
    """Compare the closed form with det_numeric of the transform at ``precision``.

    The closed form is also evaluated at precision + EXTRA_BITS as the reference.
    """
    closed = transform_det_closed(kind, N)
    hi = precision + EXTRA_BITS
    reference = real_if_close(closed.evaluate(hi), hi)
    measured = real_if_close(det_numeric(build_transform(TransformKind(kind, N, precision)),
                                         precision).value, precision)
    rel, margin, passed = judge(measured, None, reference, precision)
    return FactorizationReport(N=N, family=f"transform(kind={kind})", formula="transform-closed-form",
                               prefactor=closed, factors=[], assembled=measured, oracle=reference,
                               rel_error=rel, precision=(precision, hi), passed=passed,
                               margin_bits=margin)
