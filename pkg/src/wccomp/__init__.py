"""Exact worst-case compressibility lab for finite support sets.

Given the set of jointly possible data vectors held by N informants over a
common alphabet, the package computes the minimum worst-case uplink bits and
minimum worst-case number of informants a sink must extract to learn a target
function of the vector, classifies sets as bit-/informant-compressible, and
verifies closed-form thresholds and counts by exhaustive enumeration.
"""

__version__ = "0.1.0"

from .analysis import (
    Check,
    CountReport,
    FormulaCounts,
    RegionRow,
    RegionTable,
    ThresholdSet,
    classify,
    count_at_cardinality,
    find_witness,
    formula_counts,
    formula_thresholds,
    oracle_thresholds,
    region_table,
    verify_counts,
    verify_invariants,
    verify_lemmas,
    verify_proposition,
    verify_proposition_suite,
)
from .errors import WccompError
from .measures import MeasureSummary, beta, ceil_log2, eta, summarize
from .oracle import (
    BITWISE_OR,
    IDENTITY,
    CostReport,
    Leaf,
    OracleContext,
    Query,
    TargetFunction,
    Transcript,
    simulate,
    strategy_to_json,
    worst_case_bits,
    worst_case_bits_interleaved,
    worst_case_informants,
)
from .supports import (
    SampleSpace,
    SupportSet,
    apply_symmetry,
    canonical_form,
    condition,
    enumerate_supports,
    inverse_symmetry,
    make_space,
    parse_support,
    project,
    serialize_support,
)

__all__ = [
    "__version__",
    "WccompError",
    "SampleSpace",
    "SupportSet",
    "make_space",
    "parse_support",
    "serialize_support",
    "project",
    "condition",
    "enumerate_supports",
    "apply_symmetry",
    "inverse_symmetry",
    "canonical_form",
    "MeasureSummary",
    "ceil_log2",
    "summarize",
    "beta",
    "eta",
    "TargetFunction",
    "IDENTITY",
    "BITWISE_OR",
    "OracleContext",
    "Leaf",
    "Query",
    "Transcript",
    "CostReport",
    "worst_case_bits",
    "worst_case_informants",
    "worst_case_bits_interleaved",
    "simulate",
    "strategy_to_json",
    "classify",
    "ThresholdSet",
    "formula_thresholds",
    "oracle_thresholds",
    "verify_proposition",
    "CountReport",
    "count_at_cardinality",
    "FormulaCounts",
    "formula_counts",
    "RegionRow",
    "RegionTable",
    "region_table",
    "find_witness",
    "Check",
    "verify_lemmas",
    "verify_counts",
    "verify_proposition_suite",
    "verify_invariants",
]
