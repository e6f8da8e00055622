"""abhlab: exact valuation ideals, test ideals in characteristic p, and
mechanical verification of their uniform approximation properties."""

__version__ = "0.1.0"

from .values import FieldSpec, Value, ceil_ratio, value_add, value_cmp, value_neg, value_parse, value_scale
from .monomials import MonomialIdeal, minimal_antichain, minimal_elements, minimalize
from .valuation import ChartMove, MonomializationResult, MonomialValuation
from .testideal import (
    FrobeniusTrace,
    LPProblem,
    StabilizationError,
    fpt,
    newton_member,
    tau_frobenius,
    tau_howald,
)
from .asymptotic import (
    GradedFamily,
    StabilizationTrace,
    default_schedule,
    tau_asym_direct,
    tau_asym_limit,
)
from .theorems import (
    IzumiBruteReport,
    IzumiReport,
    TheoremAReport,
    TheoremBReport,
    izumi_brute_check,
    izumi_constants,
    minimize_e,
    theorem_a_e,
    verify_theorem_a,
    verify_theorem_b,
)

__all__ = [
    "__version__",
    "FieldSpec",
    "Value",
    "ceil_ratio",
    "value_add",
    "value_cmp",
    "value_neg",
    "value_parse",
    "value_scale",
    "MonomialIdeal",
    "minimal_antichain",
    "minimal_elements",
    "minimalize",
    "ChartMove",
    "MonomializationResult",
    "MonomialValuation",
    "FrobeniusTrace",
    "LPProblem",
    "StabilizationError",
    "fpt",
    "newton_member",
    "tau_frobenius",
    "tau_howald",
    "GradedFamily",
    "StabilizationTrace",
    "default_schedule",
    "tau_asym_direct",
    "tau_asym_limit",
    "IzumiBruteReport",
    "IzumiReport",
    "TheoremAReport",
    "TheoremBReport",
    "izumi_brute_check",
    "izumi_constants",
    "minimize_e",
    "theorem_a_e",
    "verify_theorem_a",
    "verify_theorem_b",
]
