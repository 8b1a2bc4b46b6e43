"""Command handlers shared by the HTTP endpoints and the CLI.

Each handler takes one request model and returns a Report. The CLI
calls these directly by default so that output bytes do not depend on
whether a server sits in between; the FastAPI app is a thin wrapper.

Determinism contract: every list in a Report is produced in a defined
order (lattice element order, value_sort_key, universe enumeration
order), and random sweeps derive their generators from the seed plus
the input's name, never from global state.
"""

from __future__ import annotations

import random
import re

from ..errors import DslError, PreconditionError
from ..lattice.dsl import parse_lab_source
from ..lattice.endo import (
    MonotoneEndo,
    check_coinduction_principle,
    check_induction_principle,
    check_monotone,
    check_mu_nu_duality,
    gfp,
    lfp,
    post_fixed_points,
    pre_fixed_points,
)
from ..lattice.heyting import heyting_implication, negation
from ..lattice.order import FiniteLattice
from ..lattice.sampling import random_monotone_endo
from ..nominal import (
    build_universe,
    classify,
    covariance_check,
    declared_negation_check,
    export_order,
    family_report,
    free_type,
    greatest_family_subtype_check,
    least_pre_fixed_search,
    nominal_negation,
    parse_ground,
    parse_table,
    render_ground,
)
from ..nominal.subtyping import holds as nom_holds
from ..nominal.subtyping import subtype as nom_subtype
from ..reports import PrincipleReport
from ..structural.sampling import random_mu_type, random_subtype_pair
from ..structural.subtyping import equivalent, subtype
from ..structural.syntax import (
    BaseOrder,
    Mu,
    free_vars,
    parse_defs,
    parse_type,
    render_type,
    unfold,
)
from ..structural.values import (
    constructor_as_endo,
    denote,
    oracle_subtype,
    render_value,
    value_sort_key,
)
from .models import (
    CheckRequest,
    DenoteRequest,
    EndoRequest,
    LatticeElementRequest,
    LatticeFunRequest,
    NomClassifyRequest,
    NomNameRequest,
    NomNegCheckRequest,
    NomNegationRequest,
    NomSubtypeRequest,
    Report,
    StructuralOracleRequest,
    StructuralPairRequest,
    TableRequest,
)


def _certified_endo(source: str, fun: str) -> MonotoneEndo:
    lab = parse_lab_source(source)
    f = lab.endo(fun)
    report = check_monotone(f)
    if not report.holds:
        raise PreconditionError(
            f"fun {fun!r} is not monotone: {report.counterexample}")
    return f


def _principle(command: str, report: PrincipleReport, **extra) -> Report:
    return Report(
        command=command,
        holds=report.holds,
        principle=report.principle,
        counterexample=report.counterexample,
        checked_count=report.checked_count,
        **extra,
    )


# ---------------------------------------------------------------- lattice


def lat_lfp(req: LatticeFunRequest) -> Report:
    f = _certified_endo(req.source, req.fun)
    return Report(command="lat lfp", value=lfp(f))


def lat_gfp(req: LatticeFunRequest) -> Report:
    f = _certified_endo(req.source, req.fun)
    return Report(command="lat gfp", value=gfp(f))


def lat_prefix(req: LatticeFunRequest) -> Report:
    f = _certified_endo(req.source, req.fun)
    return Report(command="lat prefix", value=list(pre_fixed_points(f)))


def lat_postfix(req: LatticeFunRequest) -> Report:
    f = _certified_endo(req.source, req.fun)
    return Report(command="lat postfix", value=list(post_fixed_points(f)))


def lat_induction(req: LatticeFunRequest) -> Report:
    f = _certified_endo(req.source, req.fun)
    return _principle("lat induction", check_induction_principle(f))


def lat_coinduction(req: LatticeFunRequest) -> Report:
    f = _certified_endo(req.source, req.fun)
    return _principle("lat coinduction", check_coinduction_principle(f))


def lat_dual(req: LatticeFunRequest) -> Report:
    f = _certified_endo(req.source, req.fun)
    return _principle("lat dual", check_mu_nu_duality(f))


def lat_neg(req: LatticeElementRequest) -> Report:
    lab = parse_lab_source(req.source)
    lat = lab.lattice(req.lattice)
    r = negation(lat, req.x)
    return Report(
        command="lat neg",
        holds=r.adjunction.holds,
        principle=r.adjunction.principle,
        counterexample=r.adjunction.counterexample,
        checked_count=r.adjunction.checked_count,
        value={"value": r.value, "defined": r.defined,
               "qualifiers": list(r.qualifiers)},
    )


def lat_imp(req: LatticeElementRequest) -> Report:
    if req.y is None:
        raise PreconditionError("implication needs both x and y")
    lab = parse_lab_source(req.source)
    lat = lab.lattice(req.lattice)
    r = heyting_implication(lat, req.x, req.y)
    return Report(
        command="lat imp",
        holds=r.adjunction.holds,
        principle=r.adjunction.principle,
        counterexample=r.adjunction.counterexample,
        checked_count=r.adjunction.checked_count,
        value={"value": r.value, "defined": r.defined,
               "qualifiers": list(r.qualifiers)},
    )


# ------------------------------------------------------------- structural


def _structural_context(defs_source: str | None):
    if defs_source is None:
        return BaseOrder.default(), None
    order, defs = parse_defs(defs_source)
    return order, defs


def st_sub(req: StructuralPairRequest) -> Report:
    order, defs = _structural_context(req.defs)
    s = parse_type(req.left, order, defs)
    t = parse_type(req.right, order, defs)
    v = subtype(s, t, order)
    return Report(
        command="st sub",
        holds=v.holds,
        assumption_trace=list(v.assumption_trace),
        failure_pair=v.failure_pair,
        value={"visited_count": v.visited_count, "goal_bound": v.goal_bound},
    )


def st_eq(req: StructuralPairRequest) -> Report:
    order, defs = _structural_context(req.defs)
    s = parse_type(req.left, order, defs)
    t = parse_type(req.right, order, defs)
    v = equivalent(s, t, order)
    return Report(
        command="st eq",
        holds=v.holds,
        failure_pair=v.forward.failure_pair or v.backward.failure_pair,
        value={"forward": v.forward.holds, "backward": v.backward.holds},
    )


def st_denote(req: DenoteRequest) -> Report:
    order, defs = _structural_context(req.defs)
    t = parse_type(req.type, order, defs)
    values = sorted(denote(t, req.depth, req.truncated), key=value_sort_key)
    return Report(
        command="st denote",
        value=[render_value(v) for v in values],
        universe_depth=req.depth,
    )


def st_oracle(req: StructuralOracleRequest) -> Report:
    order, defs = _structural_context(req.defs)
    s = parse_type(req.left, order, defs)
    t = parse_type(req.right, order, defs)
    report = oracle_subtype(s, t, req.oracle_depth)
    return _principle("st oracle", report, universe_depth=req.oracle_depth)


def st_endo(req: EndoRequest) -> Report:
    order, defs = _structural_context(req.defs)
    if re.fullmatch(r"X\d+", req.hole):
        raise PreconditionError(
            f"hole {req.hole!r} collides with canonical binder names; "
            "pick another name")
    body = parse_type(req.body, order, defs, free_ok=(req.hole,))
    stage = constructor_as_endo(body, req.hole, req.depth)
    monotone = check_monotone(stage.endo)
    return Report(
        command="st endo",
        holds=monotone.holds,
        principle=monotone.principle,
        counterexample=monotone.counterexample,
        checked_count=monotone.checked_count,
        universe_depth=req.depth,
        value={
            "universe": [render_value(v) for v in stage.universe],
            "lattice": stage.lattice.name,
            "elements": len(stage.lattice.elements),
            "lfp": lfp(stage.endo),
            "gfp": gfp(stage.endo),
        },
    )


# ---------------------------------------------------------------- nominal


def nom_sub(req: NomSubtypeRequest) -> Report:
    table = parse_table(req.table)
    s = parse_ground(req.left, table)
    t = parse_ground(req.right, table)
    v = nom_subtype(s, t, table)
    return Report(
        command="nom sub",
        holds=v.holds,
        assumption_trace=list(v.assumption_trace),
        failure_pair=v.failure_pair,
        value={"visited_count": v.visited_count, "goal_bound": v.goal_bound},
    )


def nom_free(req: NomNameRequest) -> Report:
    table = parse_table(req.table)
    return Report(command="nom free",
                  value=render_ground(free_type(table, req.name)))


def nom_classify(req: NomClassifyRequest) -> Report:
    table = parse_table(req.table)
    candidate = parse_ground(req.candidate, table)
    r = classify(table, req.name, candidate)
    return Report(
        command="nom classify",
        notion="literal",
        value={"candidate": r.candidate, "constructor": r.constructor,
               "pre_fixed": r.pre_fixed, "post_fixed": r.post_fixed,
               "fixed": r.fixed},
    )


def nom_family(req: NomNameRequest) -> Report:
    table = parse_table(req.table)
    universe = build_universe(table, req.depth)
    rec = family_report(table, universe, req.name)
    check = greatest_family_subtype_check(table, universe, req.name)
    return Report(
        command="nom family",
        holds=check.holds,
        principle=check.principle,
        counterexample=check.counterexample,
        checked_count=check.checked_count,
        notion="family",
        universe_depth=req.depth,
        value={"constructor": rec.constructor,
               "family_subtypes": list(rec.family_subtypes),
               "family_supertypes": list(rec.family_supertypes)},
    )


def nom_least_pre(req: NomNameRequest) -> Report:
    table = parse_table(req.table)
    universe = build_universe(table, req.depth)
    r = least_pre_fixed_search(table, universe, req.name)
    literal = Report(
        command="nom least-pre",
        notion="literal",
        universe_depth=req.depth,
        value={"constructor": r.constructor, "least": r.least,
               "minimal_set": list(r.minimal_set),
               "pre_fixed": list(r.pre_fixed)},
    )
    family = Report(
        command="nom least-pre",
        notion="family",
        universe_depth=req.depth,
        value={"constructor": r.constructor,
               "family_least_exists": r.family_least_exists,
               "family_candidates": list(r.family_candidates),
               "no_least_witnesses": list(r.no_least_witnesses)
               if r.no_least_witnesses else None},
    )
    return Report(
        command="nom least-pre",
        universe_depth=req.depth,
        reports=[literal, family],
    )


def nom_covariance(req: NomNameRequest) -> Report:
    table = parse_table(req.table)
    universe = build_universe(table, req.depth)
    report = covariance_check(table, universe, req.name)
    return _principle("nom covariance", report, universe_depth=req.depth)


def nom_neg(req: NomNegationRequest) -> Report:
    table = parse_table(req.table)
    universe = build_universe(table, req.depth)
    subject = parse_ground(req.subject, table)
    r = nominal_negation(table, universe, subject)
    return Report(
        command="nom neg",
        universe_depth=req.depth,
        value={"subject": r.subject, "result": r.result,
               "disjoint_set": list(r.disjoint_set),
               "minimal_upper_bounds": list(r.minimal_upper_bounds)},
    )


def nom_negcheck(req: NomNegCheckRequest) -> Report:
    table = parse_table(req.table)
    universe = build_universe(table, req.depth)
    report = declared_negation_check(
        table, universe,
        parse_ground(req.neg, table),
        parse_ground(req.pos, table),
        parse_ground(req.base, table),
    )
    return _principle("nom negcheck", report, universe_depth=req.depth)


def nom_universe(req: TableRequest) -> Report:
    table = parse_table(req.table)
    universe = build_universe(table, req.depth)
    return Report(
        command="nom universe",
        universe_depth=req.depth,
        value=[render_ground(t) for t in universe],
    )


def nom_export(req: TableRequest) -> Report:
    table = parse_table(req.table)
    universe = build_universe(table, req.depth)
    lat = export_order(table, universe)
    pairs = [[a, b]
             for a in lat.elements for b in lat.elements
             if a != b and lat.leq(a, b)]
    return Report(
        command="nom export",
        universe_depth=req.depth,
        value={"name": lat.name, "elements": list(lat.elements),
               "bottom": lat.bottom, "top": lat.top,
               "is_complete_lattice": lat.is_complete_lattice,
               "order": pairs},
    )


# -------------------------------------------------------------- check all

RANDOM_ENDOS_PER_LATTICE = 25
RANDOM_MU_TYPES = 25
RANDOM_SUBTYPE_PAIRS = 50
RANDOM_NOMINAL_TRIPLES = 200


def _is_boolean(lat: FiniteLattice) -> bool:
    """Bounded, complete and uniquely complemented.

    Unique complementation is what the duality sweep needs: with two
    complements on offer (the diamond), the greedy complement table
    is not an involution and gfp-via-dual-lfp can come back wrong
    without anything being broken. Finite and uniquely complemented
    is Boolean, so the name is earned.
    """
    if lat.bottom is None or lat.top is None or not lat.is_complete_lattice:
        return False
    if len(lat.elements) > 256:
        return False  # keep the n^2 scan off large inputs; dual stays on demand
    for x in lat.elements:
        count = 0
        for c in lat.elements:
            if lat.meet(x, c) == lat.bottom and lat.join(x, c) == lat.top:
                count += 1
                if count > 1:
                    return False
        if count != 1:
            return False
    return True


def _sweep_lattice(name: str, lat: FiniteLattice, endos, rng) -> list[Report]:
    out = []
    boolean = _is_boolean(lat)
    sampled = [random_monotone_endo(lat, rng, name=f"rnd{i}")
               for i in range(RANDOM_ENDOS_PER_LATTICE)]
    for label, f in list(endos) + [(g.name, g) for g in sampled]:
        report = check_monotone(f)
        if not report.holds:
            out.append(_principle(f"lat monotone {name} {label}", report))
            continue
        out.append(_principle(f"lat induction {name} {label}",
                              check_induction_principle(f)))
        out.append(_principle(f"lat coinduction {name} {label}",
                              check_coinduction_principle(f)))
        if boolean:
            out.append(_principle(f"lat dual {name} {label}",
                                  check_mu_nu_duality(f)))
    return out


def _check_lab(name: str, source: str, seed: int) -> list[Report]:
    lab = parse_lab_source(source)
    out: list[Report] = []
    by_lattice: dict[str, list] = {}
    for fun_name, f in lab.endos.items():
        by_lattice.setdefault(f.domain.name, []).append((fun_name, f))
    for lat_name, lat in lab.lattices.items():
        rng = random.Random(f"{seed}:{name}:{lat_name}")
        endos = by_lattice.get(lat_name, [])
        out.extend(_sweep_lattice(f"{name}:{lat_name}", lat, endos, rng))
    return out


_DEFAULT_BASES = ("Bool", "Nat", "Int")


def _oracle_applicable(t) -> bool:
    from ..structural.syntax import Arrow, Base, Mu as MuT, Prod, Sum

    def scan(u) -> bool:
        if isinstance(u, Arrow):
            return False
        if isinstance(u, Base):
            return u.name in _DEFAULT_BASES
        if isinstance(u, (Sum, Prod)):
            return scan(u.left) and scan(u.right)
        if isinstance(u, MuT):
            return scan(u.body)
        return True

    return scan(t)


def _check_defs(name: str, source: str, seed: int, oracle_depth: int) -> list[Report]:
    order, defs = parse_defs(source)
    out: list[Report] = []
    roundtrip_failures = []
    for def_name, t in defs.items():
        back = parse_type(render_type(t), order, defs)
        if back != t:
            roundtrip_failures.append(def_name)
    out.append(Report(
        command=f"st roundtrip {name}",
        holds=not roundtrip_failures,
        principle="print-parse-roundtrip",
        counterexample=(f"definitions {roundtrip_failures} do not survive "
                        "render + reparse") if roundtrip_failures else None,
        checked_count=len(defs),
    ))

    fold_checked = 0
    fold_cex = None
    for def_name, t in defs.items():
        if isinstance(t, Mu) and not free_vars(t):
            fold_checked += 1
            if not equivalent(t, unfold(t), order).holds:
                fold_cex = f"{def_name} is not equivalent to its unfolding"
                break
    rng = random.Random(f"{seed}:{name}:mu")
    for _ in range(RANDOM_MU_TYPES):
        if fold_cex:
            break
        t = random_mu_type(rng)
        fold_checked += 1
        if not equivalent(t, unfold(t), BaseOrder.default()).holds:
            fold_cex = f"random mu type {render_type(t)} is not equivalent to its unfolding"
    out.append(Report(
        command=f"st fold-unfold {name}",
        holds=fold_cex is None,
        principle="fold-unfold",
        counterexample=fold_cex,
        checked_count=fold_checked,
    ))

    oracle_checked = 0
    oracle_cex = None
    names = sorted(defs)
    for a in names:
        for b in names:
            if oracle_cex:
                break
            s, t = defs[a], defs[b]
            if not (_oracle_applicable(s) and _oracle_applicable(t)):
                continue
            if not subtype(s, t, order).holds:
                continue
            oracle_checked += 1
            verdict = oracle_subtype(s, t, oracle_depth)
            if not verdict.holds:
                oracle_cex = (f"{a} <: {b} per the checker but "
                              f"{verdict.counterexample}")
    rng = random.Random(f"{seed}:{name}:pairs")
    for _ in range(RANDOM_SUBTYPE_PAIRS):
        if oracle_cex:
            break
        s, t = random_subtype_pair(rng, oracle_depth=oracle_depth)
        if not subtype(s, t).holds:
            continue
        oracle_checked += 1
        verdict = oracle_subtype(s, t, oracle_depth)
        if not verdict.holds:
            oracle_cex = (f"{render_type(s)} <: {render_type(t)} per the "
                          f"checker but {verdict.counterexample}")
    out.append(Report(
        command=f"st oracle-agreement {name}",
        holds=oracle_cex is None,
        principle="denotation-inclusion",
        counterexample=oracle_cex,
        checked_count=oracle_checked,
        universe_depth=oracle_depth,
    ))
    return out


def _check_table(name: str, source: str, seed: int, depth: int) -> list[Report]:
    table = parse_table(source)
    universe = build_universe(table, depth)
    out: list[Report] = []

    rng = random.Random(f"{seed}:{name}:order")
    order_cex = None
    checked = 0
    for t in universe:
        checked += 1
        if not nom_holds(t, t, table):
            order_cex = f"{render_ground(t)} is not <: itself"
            break
    for _ in range(RANDOM_NOMINAL_TRIPLES):
        if order_cex:
            break
        a, b, c = (rng.choice(universe) for _ in range(3))
        checked += 1
        if nom_holds(a, b, table) and nom_holds(b, c, table) \
                and not nom_holds(a, c, table):
            order_cex = (f"transitivity fails through {render_ground(a)} <: "
                         f"{render_ground(b)} <: {render_ground(c)}")
    out.append(Report(
        command=f"nom preorder {name}",
        holds=order_cex is None,
        principle="preorder",
        counterexample=order_cex,
        checked_count=checked,
        universe_depth=depth,
        seed=seed,
    ))

    for generic in table.generics():
        out.append(_principle(
            f"nom family {name} {generic}",
            greatest_family_subtype_check(table, universe, generic),
            universe_depth=depth))
        out.append(_principle(
            f"nom covariance {name} {generic}",
            covariance_check(table, universe, generic),
            universe_depth=depth))

    neg_null = nominal_negation(table, universe, parse_ground("Null", table))
    neg_obj = nominal_negation(table, universe, parse_ground("Object", table))
    extreme_ok = neg_null.result == "Object" and neg_obj.result == "Null"
    out.append(Report(
        command=f"nom neg-extremes {name}",
        holds=extreme_ok,
        principle="negation-extremes",
        counterexample=None if extreme_ok else (
            f"neg(Null) = {neg_null.result!r}, neg(Object) = {neg_obj.result!r}"),
        checked_count=2,
        universe_depth=depth,
    ))

    lat = export_order(table, universe)
    bounds_ok = lat.bottom == "Null" and lat.top == "Object"
    out.append(Report(
        command=f"nom export-bounds {name}",
        holds=bounds_ok,
        principle="export-bounds",
        counterexample=None if bounds_ok else (
            f"bottom = {lat.bottom!r}, top = {lat.top!r}"),
        checked_count=len(lat.elements),
        universe_depth=depth,
    ))
    return out


def check_all(req: CheckRequest) -> Report:
    reports: list[Report] = []
    for name in sorted(req.files):
        source = req.files[name]
        if name.endswith((".lat", ".fun")):
            reports.extend(_check_lab(name, source, req.seed))
        elif name.endswith(".ty"):
            reports.extend(_check_defs(name, source, req.seed, req.oracle_depth))
        elif name.endswith(".tbl"):
            reports.extend(_check_table(name, source, req.seed, req.depth))
        else:
            raise DslError(f"{name}: unrecognized extension "
                           "(expected .lat, .fun, .ty or .tbl)")
    verdicts = [r.holds for r in reports if r.holds is not None]
    return Report(
        command="check all",
        holds=all(verdicts) if verdicts else True,
        checked_count=len(reports),
        seed=req.seed,
        reports=reports,
    )
