"""Construct, verify and classify quasi-homogeneous aggregation functions."""

from ._qhagg import (
    AggregationFunction,
    EvaluationError,
    ExpressionError,
    SpecError,
    ValidationError,
    catalog,
    catalog_names,
    check_aggregation,
    check_multiplicative,
    check_quasi_homogeneity,
    class_boundary,
    class_flat,
    classify,
    combine,
    from_spec_json,
    from_triple,
    validate_triple,
)

__all__ = [
    "AggregationFunction",
    "EvaluationError",
    "ExpressionError",
    "SpecError",
    "ValidationError",
    "catalog",
    "catalog_names",
    "check_aggregation",
    "check_multiplicative",
    "check_quasi_homogeneity",
    "class_boundary",
    "class_flat",
    "classify",
    "combine",
    "from_spec_json",
    "from_triple",
    "validate_triple",
]
