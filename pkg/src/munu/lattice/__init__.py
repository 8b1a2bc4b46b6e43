from .order import (
    FiniteLattice,
    build_poset,
    build_powerset,
    parallel,
    max_elements,
)
from .endo import (
    MonotoneEndo,
    check_monotone,
    lfp,
    gfp,
    pre_fixed_points,
    post_fixed_points,
    check_induction_principle,
    check_coinduction_principle,
    dual_endo,
    check_mu_nu_duality,
)
from .heyting import ImplicationResult, heyting_implication, negation
from .dsl import LabFile, parse_lab_source

__all__ = [
    "FiniteLattice",
    "build_poset",
    "build_powerset",
    "parallel",
    "max_elements",
    "MonotoneEndo",
    "check_monotone",
    "lfp",
    "gfp",
    "pre_fixed_points",
    "post_fixed_points",
    "check_induction_principle",
    "check_coinduction_principle",
    "dual_endo",
    "check_mu_nu_duality",
    "ImplicationResult",
    "heyting_implication",
    "negation",
    "LabFile",
    "parse_lab_source",
]
