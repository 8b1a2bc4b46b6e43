"""Nominal class tables with interval arguments."""

from .analysis import (
    ClassifyReport,
    FamilyReport,
    LeastPreReport,
    NegationReport,
    build_universe,
    classify,
    covariance_check,
    declared_negation_check,
    export_order,
    family_members,
    family_report,
    family_supertypes,
    free_type,
    greatest_family_subtype_check,
    interval_contains,
    least_pre_fixed_search,
    nominal_negation,
    well_formed_intervals,
)
from .subtyping import NomVerdict, subtype
from .tables import (
    NULL,
    OBJECT,
    App,
    ClassDecl,
    ClassTable,
    GroundType,
    Interval,
    NullT,
    ObjectT,
    Plain,
    ground_closure,
    parse_ground,
    parse_table,
    point,
    render_ground,
)

__all__ = [
    "App",
    "ClassDecl",
    "ClassTable",
    "ClassifyReport",
    "GroundType",
    "Interval",
    "LeastPreReport",
    "NegationReport",
    "NomVerdict",
    "NULL",
    "NullT",
    "OBJECT",
    "ObjectT",
    "Plain",
    "build_universe",
    "classify",
    "covariance_check",
    "declared_negation_check",
    "export_order",
    "FamilyReport",
    "family_members",
    "family_report",
    "family_supertypes",
    "free_type",
    "greatest_family_subtype_check",
    "ground_closure",
    "interval_contains",
    "least_pre_fixed_search",
    "nominal_negation",
    "parse_ground",
    "parse_table",
    "point",
    "render_ground",
    "subtype",
    "well_formed_intervals",
]
