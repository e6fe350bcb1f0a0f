"""Frontal curves, parallels of their tangent surfaces and the singularities
that appear along them."""

from ._core import (
    Curve,
    DomainError,
    Error,
    InflectionError,
    ParseError,
    builtin_names,
    check_T_identity,
    classify_type,
    cli,
    detect_type,
    find_inflections,
    invariants,
    normal_form_consistent,
    normal_form_names,
    run_suite,
)

__all__ = [
    "Curve",
    "DomainError",
    "Error",
    "InflectionError",
    "ParseError",
    "builtin_names",
    "check_T_identity",
    "classify_type",
    "cli",
    "detect_type",
    "find_inflections",
    "invariants",
    "normal_form_consistent",
    "normal_form_names",
    "run_suite",
]
