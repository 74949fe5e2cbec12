"""Block factorization of paratrophic determinants over Z/NZ."""

from .bernoulli import bernoulli_det_formula, bernoulli_hat_closed
from .report import Factor, FactorizationReport
from .structure import (BlockDecomposition, StructureViolation, decompose, dedekind_factor,
                        dedekind_factor_exact, det_via_factorization, hat, hat_exact,
                        transformed_entry)
from .sun import SunRecord, sun_check
from .tangent import (class_number_form, tangent_det_formula, tangent_hat_closed,
                      tangent_hat_integer, tangent_lambda)
from .transforms import transform_det_check

__all__ = [
    "BlockDecomposition", "Factor", "FactorizationReport", "StructureViolation", "SunRecord",
    "bernoulli_det_formula", "bernoulli_hat_closed", "class_number_form", "decompose",
    "dedekind_factor", "dedekind_factor_exact", "det_via_factorization", "hat", "hat_exact",
    "sun_check", "tangent_det_formula", "tangent_hat_closed", "tangent_hat_integer",
    "tangent_lambda", "transform_det_check", "transformed_entry",
]
