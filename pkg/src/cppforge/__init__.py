"""Complete permutation polynomials over two-level finite field towers.

The package builds CPPs of F_{q^n} from complete mappings of F_q through
norm- and trace-composed liftings, verifies everything exhaustively at
desk scale, and ships grid sweeps that confront each construction's
prediction with ground truth over every parameter choice that fits.
"""

from .errors import (
    BadTableLength,
    CppforgeError,
    DivisionByZero,
    FieldMismatch,
    HypothesisFails,
    MapEscapesKernel,
    NotIrreducible,
    NotPrime,
    OrderCapExceeded,
    OutOfRange,
    PreconditionViolated,
    ReconstructionMismatch,
    SearchCapExceeded,
)
from .fields import (
    FieldDesc,
    FieldElement,
    Poly,
    TowerDesc,
    embed_poly,
    make_extension,
    make_prime_field,
    make_tower,
)
from .maps import (
    KernelCriterionVerdict,
    PPoly,
    binomial_kernel_criterion,
    norm_exponent,
    ppoly_permutes_kernel,
    ppoly_quotient,
    rel_norm,
    rel_trace,
    trace_kernel,
)
from .permcheck import (
    DEFAULT_EXHAUSTIVE_CAP,
    CppCheck,
    FiberCriterionReport,
    PermVerdict,
    eval_poly,
    fiber_criterion_verify,
    is_complete_permutation,
    is_cpp,
    is_permutation,
    table_verdict,
    value_table,
)
from .lifts import (
    LiftResult,
    cppeg_construct,
    general_trace_map,
    monomial_cpp_check,
    norm_form_permutes,
    norm_lift,
    trace_lift_binomial,
    trace_lift_general,
    trace_lift_simple,
)
from .search import (
    CompleteMapping,
    brute_complete_mappings,
    enumerate_complete_mappings,
    lagrange_interpolate,
    to_h_form,
)
from .grids import REGISTRY, SweepReport, norm_lift_pairs, tower_grid

__version__ = "0.1.0"

__all__ = [
    "BadTableLength",
    "CppforgeError",
    "DivisionByZero",
    "FieldMismatch",
    "HypothesisFails",
    "MapEscapesKernel",
    "NotIrreducible",
    "NotPrime",
    "OrderCapExceeded",
    "OutOfRange",
    "PreconditionViolated",
    "ReconstructionMismatch",
    "SearchCapExceeded",
    "FieldDesc",
    "FieldElement",
    "Poly",
    "TowerDesc",
    "embed_poly",
    "make_extension",
    "make_prime_field",
    "make_tower",
    "KernelCriterionVerdict",
    "PPoly",
    "binomial_kernel_criterion",
    "norm_exponent",
    "ppoly_permutes_kernel",
    "ppoly_quotient",
    "rel_norm",
    "rel_trace",
    "trace_kernel",
    "DEFAULT_EXHAUSTIVE_CAP",
    "CppCheck",
    "FiberCriterionReport",
    "PermVerdict",
    "eval_poly",
    "fiber_criterion_verify",
    "is_complete_permutation",
    "is_cpp",
    "is_permutation",
    "table_verdict",
    "value_table",
    "LiftResult",
    "cppeg_construct",
    "general_trace_map",
    "monomial_cpp_check",
    "norm_form_permutes",
    "norm_lift",
    "trace_lift_binomial",
    "trace_lift_general",
    "trace_lift_simple",
    "CompleteMapping",
    "brute_complete_mappings",
    "enumerate_complete_mappings",
    "lagrange_interpolate",
    "to_h_form",
    "REGISTRY",
    "SweepReport",
    "norm_lift_pairs",
    "tower_grid",
    "__version__",
]
