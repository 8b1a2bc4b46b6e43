from .syntax import (
    Arrow,
    Base,
    BaseOrder,
    Mu,
    Prod,
    StructType,
    Sum,
    TOP,
    Top,
    UNIT,
    Unit,
    Var,
    canonicalize,
    node_count,
    parse_defs,
    parse_type,
    render_type,
    standard_library,
    unfold,
)
from .subtyping import EquivalenceVerdict, SubtypeVerdict, equivalent, subtype
from .values import (
    BaseV,
    DenoteConfig,
    EndoStage,
    InL,
    InR,
    Pair,
    STUB,
    Stub,
    UNIT_V,
    UnitV,
    ValueTree,
    constructor_as_endo,
    default_config,
    denote,
    inhabits,
    oracle_subtype,
    render_value,
    value_depth,
)

__all__ = [
    "Arrow", "Base", "BaseOrder", "Mu", "Prod", "StructType", "Sum",
    "TOP", "Top", "UNIT", "Unit", "Var",
    "canonicalize", "node_count", "parse_defs", "parse_type",
    "render_type", "standard_library", "unfold",
    "EquivalenceVerdict", "SubtypeVerdict", "equivalent", "subtype",
    "BaseV", "DenoteConfig", "EndoStage", "InL", "InR", "Pair",
    "STUB", "Stub", "UNIT_V", "UnitV", "ValueTree",
    "constructor_as_endo", "default_config", "denote", "inhabits",
    "oracle_subtype", "render_value", "value_depth",
]
