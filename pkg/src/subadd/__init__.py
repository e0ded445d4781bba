"""Verification toolkit for a-subadditive functions.

A function ``f`` is *a-subadditive* for a fixed order ``a > 0`` when
``f(a*x + y) <= a*f(x) + f(y)`` for all real ``x, y``.  This package works
with a concrete two-parameter family — a symmetric, concave-type base
profile plus a scaled ring bump — and provides:

- ``analytic_core``: float64 and high-precision evaluation of the family,
  its gap functional, derivatives, and the plane regions used by the
  certificate;
- ``intervals``: outward-rounded interval arithmetic with three-valued
  comparisons;
- ``certificate``: region-wise sufficient conditions for 2-subadditivity,
  evaluated rigorously, with an honest tri-state verdict;
- ``search``: deterministic grid scanning and refinement for violations of
  a-subadditivity, with high-precision confirmation of any hit;
- ``statement_oracles``: numeric spot-checks of the supporting analytic
  statements (mean-value identities, monotonicity, symmetrization,
  concavity, a semigroup membership test, an indicator-function example);
- ``cone``: an exact rational construction mapping a countable positive
  cone into the subadditive world via per-generator knee maps;
- ``cli``: a ``subadd`` command exposing all of the above.
"""

from .analytic_core import (
    HighPrecision,
    Order,
    Params,
    Point,
    RegionFlags,
    classify_region,
    eval_C,
    eval_f,
    eval_g,
    eval_h,
    eval_lambda,
    eval_phi,
    eval_psi,
    f_prime,
    gap,
    h_prime,
    h_second,
)
from .certificate import (
    CAVEAT,
    CertificateReport,
    ConditionResult,
    Verdict,
    certify_S2,
    check_region_A,
    check_region_B,
    check_region_C,
)
from .cone import (
    Cone,
    ConeElement,
    Generator,
    GeneratorId,
    GeneratorKind,
    SubadditivityWitness,
    WitnessCase,
    make_generators,
    q_of,
)
from .errors import (
    ConstructionBugError,
    DomainError,
    InputError,
    PreconditionError,
    RangeError,
    SingularityError,
    ToolkitError,
)
from .intervals import (
    Interval,
    Tristate,
    certainly_le,
    iadd,
    idiv,
    iexp,
    ilog,
    imul,
    isq,
    isqrt,
    isub,
)
from .search import (
    ScanConfig,
    ScanReport,
    TableRow,
    Violation,
    find_violation,
    reproduce_table,
    scan_gap_min,
    verify_point,
    violation_scan_config,
)
from .statement_oracles import (
    RationalityCase,
    SemigroupStatus,
    check_monotone_f,
    check_rolle_identity,
    check_symmetrization,
    check_tau_concavity,
    indicator_case_table,
    indicator_example_check,
    rolle_probe,
    semigroup_member,
    semigroup_search,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "ToolkitError",
    "InputError",
    "DomainError",
    "RangeError",
    "SingularityError",
    "PreconditionError",
    "ConstructionBugError",
    # intervals
    "Interval",
    "Tristate",
    "iadd",
    "isub",
    "imul",
    "idiv",
    "iexp",
    "ilog",
    "isqrt",
    "isq",
    "certainly_le",
    # analytic core
    "Params",
    "Point",
    "RegionFlags",
    "Order",
    "HighPrecision",
    "eval_g",
    "eval_h",
    "eval_f",
    "eval_phi",
    "eval_lambda",
    "eval_psi",
    "eval_C",
    "gap",
    "classify_region",
    "f_prime",
    "h_prime",
    "h_second",
    # certificate
    "Verdict",
    "ConditionResult",
    "CertificateReport",
    "CAVEAT",
    "check_region_A",
    "check_region_B",
    "check_region_C",
    "certify_S2",
    # search
    "ScanConfig",
    "ScanReport",
    "Violation",
    "TableRow",
    "scan_gap_min",
    "find_violation",
    "verify_point",
    "reproduce_table",
    "violation_scan_config",
    # statement oracles
    "RationalityCase",
    "SemigroupStatus",
    "rolle_probe",
    "check_rolle_identity",
    "check_monotone_f",
    "check_symmetrization",
    "check_tau_concavity",
    "semigroup_search",
    "semigroup_member",
    "indicator_case_table",
    "indicator_example_check",
    # cone
    "GeneratorKind",
    "GeneratorId",
    "Generator",
    "ConeElement",
    "WitnessCase",
    "SubadditivityWitness",
    "Cone",
    "make_generators",
    "q_of",
]
