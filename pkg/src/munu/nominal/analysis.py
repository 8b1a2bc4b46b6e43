"""Order-level analyses over a class table.

Everything here quantifies over a finite universe of ground types:
level 0 holds Null, Object and the plain classes in declaration
order; each later level adds every application F<[L,U]> of each
generic class (declaration order) to well-formed intervals over the
previous level, in enumeration order. Analyses are therefore honest
about their scope: they answer for the universe they were given, not
for the unbounded space of all types.

A generic class is read as a one-step constructor: a candidate P is
pre-fixed when F<P> <: P and post-fixed when P <: F<P>. The family of
F collects everything below some instantiation; its supertypes
collect everything above some instantiation. Negation of x finds the
types with no non-Null common subtype with x and reports the least
upper bound of that set when the universe has one.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import GuardExceeded, PreconditionError
from ..lattice.order import FiniteLattice, max_elements
from ..reports import PrincipleReport
from .subtyping import holds
from .tables import (
    NULL,
    OBJECT,
    App,
    ClassTable,
    GroundType,
    Interval,
    NullT,
    Plain,
    point,
    render_ground,
)

MAX_UNIVERSE_DEPTH = 3


def free_type(table: ClassTable, name: str) -> App:
    """The widest application F<?> of a generic class."""
    if not table.decl(name).generic:
        raise PreconditionError(f"class {name!r} is not generic")
    return App(name, Interval(NULL, OBJECT))


def build_universe(table: ClassTable, k: int) -> tuple[GroundType, ...]:
    if k < 0:
        raise PreconditionError("universe depth must be non-negative")
    if k > MAX_UNIVERSE_DEPTH:
        raise GuardExceeded(f"universe depth {k} exceeds the guard of {MAX_UNIVERSE_DEPTH}")
    level: list[GroundType] = [NULL, OBJECT]
    level.extend(Plain(name) for name in table.plains())
    generics = table.generics()
    limit = max_elements()
    for _ in range(k if generics else 0):
        seen = set(level)
        nxt = list(level)
        for name in generics:
            for lo in level:
                for hi in level:
                    if not holds(lo, hi, table):
                        continue
                    t = App(name, Interval(lo, hi))
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
                        if len(nxt) > limit:
                            raise GuardExceeded(
                                f"universe exceeds the element guard of {limit} "
                                "(override with MUNU_MAX_ELEMENTS)")
        level = nxt
    return tuple(level)


@dataclass(frozen=True)
class ClassifyReport:
    candidate: str
    constructor: str
    pre_fixed: bool
    post_fixed: bool

    @property
    def fixed(self) -> bool:
        return self.pre_fixed and self.post_fixed


def classify(table: ClassTable, name: str, candidate: GroundType) -> ClassifyReport:
    step = App(name, point(candidate))
    if not table.decl(name).generic:
        raise PreconditionError(f"class {name!r} is not generic")
    return ClassifyReport(
        candidate=render_ground(candidate),
        constructor=name,
        pre_fixed=holds(step, candidate, table),
        post_fixed=holds(candidate, step, table),
    )


def _instances(universe, name: str):
    return [t for t in universe if isinstance(t, App) and t.name == name]


def family_members(table: ClassTable, universe, name: str) -> tuple[GroundType, ...]:
    apps = _instances(universe, name)
    return tuple(p for p in universe if any(holds(p, a, table) for a in apps))


def family_supertypes(table: ClassTable, universe, name: str) -> tuple[GroundType, ...]:
    apps = _instances(universe, name)
    return tuple(p for p in universe if any(holds(a, p, table) for a in apps))


@dataclass(frozen=True)
class FamilyReport:
    constructor: str
    family_subtypes: tuple[str, ...]
    family_supertypes: tuple[str, ...]


def family_report(table: ClassTable, universe, name: str) -> FamilyReport:
    """Both directions of the family scan, rendered for reporting."""
    if not table.decl(name).generic:
        raise PreconditionError(f"class {name!r} is not generic")
    return FamilyReport(
        constructor=name,
        family_subtypes=tuple(render_ground(t)
                              for t in family_members(table, universe, name)),
        family_supertypes=tuple(render_ground(t)
                                for t in family_supertypes(table, universe, name)),
    )


def greatest_family_subtype_check(table: ClassTable, universe, name: str) -> PrincipleReport:
    """F<?> sits above every application of F in the universe."""
    top = free_type(table, name)
    checked = 0
    for a in _instances(universe, name):
        checked += 1
        if not holds(a, top, table):
            return PrincipleReport(
                principle="greatest-family-subtype",
                holds=False,
                counterexample=f"{render_ground(a)} is not <: {render_ground(top)}",
                checked_count=checked,
            )
    return PrincipleReport("greatest-family-subtype", True, None, checked)


@dataclass(frozen=True)
class LeastPreReport:
    constructor: str
    pre_fixed: tuple[str, ...]
    least: str | None
    minimal_set: tuple[str, ...]
    family_candidates: tuple[str, ...]
    family_least_exists: bool
    no_least_witnesses: tuple[str, str] | None


def least_pre_fixed_search(table: ClassTable, universe, name: str) -> LeastPreReport:
    """Search the universe for a least pre-fixed point of F.

    Two readings are reported. The literal one ranges over candidates
    P with F<P> <: P. The family one asks for a non-Null type below
    every supertype of the family; when none exists, the witnesses
    are the first incomparable pair of family supertypes with no
    common lower bound above Null.
    """
    if not table.decl(name).generic:
        raise PreconditionError(f"class {name!r} is not generic")
    pre = [p for p in universe if holds(App(name, point(p)), p, table)]
    least = None
    for p in pre:
        if all(holds(p, q, table) for q in pre):
            least = p
            break
    minimal = [p for p in pre
               if not any(q != p and holds(q, p, table) for q in pre)]

    supers = family_supertypes(table, universe, name)
    candidates = [p for p in universe
                  if not isinstance(p, NullT)
                  and all(holds(p, s, table) for s in supers)]
    witnesses = None
    if not candidates:
        witnesses = _incomparable_without_lower_bound(table, universe, supers)
    return LeastPreReport(
        constructor=name,
        pre_fixed=tuple(render_ground(p) for p in pre),
        least=render_ground(least) if least is not None else None,
        minimal_set=tuple(render_ground(p) for p in minimal),
        family_candidates=tuple(render_ground(p) for p in candidates),
        family_least_exists=bool(candidates),
        no_least_witnesses=witnesses,
    )


def _incomparable_without_lower_bound(table, universe, supers):
    for a in supers:
        for b in supers:
            if a == b or holds(a, b, table) or holds(b, a, table):
                continue
            if not any(not isinstance(c, NullT)
                       and holds(c, a, table) and holds(c, b, table)
                       for c in universe):
                return (render_ground(a), render_ground(b))
    return None


def well_formed_intervals(table: ClassTable, universe) -> tuple[Interval, ...]:
    """Every interval with endpoints in the universe, in enumeration order."""
    return tuple(Interval(lo, hi)
                 for lo in universe for hi in universe
                 if holds(lo, hi, table))


def interval_contains(table: ClassTable, i1: Interval, i2: Interval) -> bool:
    """i2's range covers i1's: L2 <: L1 and U1 <: U2."""
    return holds(i2.lower, i1.lower, table) and holds(i1.upper, i2.upper, table)


def covariance_check(table: ClassTable, universe, name: str) -> PrincipleReport:
    """Interval containment forces application subtyping, swept in full.

    Every pair of universe-endpoint intervals with I1 inside I2 must
    give F<I1> <: F<I2>. Same-head goals are decided by exactly this
    rule, so the sweep exercises the checker's plumbing (assumption
    sets, superclass climbing) rather than conjecturing new theory.
    """
    if not table.decl(name).generic:
        raise PreconditionError(f"class {name!r} is not generic")
    intervals = well_formed_intervals(table, universe)
    checked = 0
    for i1 in intervals:
        for i2 in intervals:
            if not interval_contains(table, i1, i2):
                continue
            checked += 1
            a1, a2 = App(name, i1), App(name, i2)
            if not holds(a1, a2, table):
                return PrincipleReport(
                    "covariance", False,
                    f"[{render_ground(i1.lower)},{render_ground(i1.upper)}] sits inside "
                    f"[{render_ground(i2.lower)},{render_ground(i2.upper)}] but "
                    f"{render_ground(a1)} is not <: {render_ground(a2)}",
                    checked)
    return PrincipleReport("covariance", True, None, checked)


@dataclass(frozen=True)
class NegationReport:
    subject: str
    disjoint_set: tuple[str, ...]
    minimal_upper_bounds: tuple[str, ...]
    result: str | None


def nominal_negation(table: ClassTable, universe, x: GroundType) -> NegationReport:
    """The best upper bound of everything disjoint from x.

    Two types are disjoint when no non-Null universe member sits
    below both. When the disjoint set has a unique minimal upper
    bound it is reported as the negation; otherwise every minimal
    upper bound is listed and the result is left open.
    """
    if x not in universe:
        raise PreconditionError(
            f"{render_ground(x)} is not a member of the universe")
    disjoint = [a for a in universe
                if not any(not isinstance(c, NullT)
                           and holds(c, a, table) and holds(c, x, table)
                           for c in universe)]
    uppers = [u for u in universe if all(holds(d, u, table) for d in disjoint)]
    minimal = [u for u in uppers
               if not any(v != u and holds(v, u, table) for v in uppers)]
    return NegationReport(
        subject=render_ground(x),
        disjoint_set=tuple(render_ground(a) for a in disjoint),
        minimal_upper_bounds=tuple(render_ground(u) for u in minimal),
        result=render_ground(minimal[0]) if len(minimal) == 1 else None,
    )


def declared_negation_check(table: ClassTable, universe, a: GroundType,
                            b: GroundType, base: GroundType) -> PrincipleReport:
    """a and b partition base: both below it, incomparable, disjoint."""
    def fail(reason: str, checked: int) -> PrincipleReport:
        return PrincipleReport("declared-negation", False, reason, checked)

    if not holds(a, base, table):
        return fail(f"{render_ground(a)} is not <: {render_ground(base)}", 1)
    if not holds(b, base, table):
        return fail(f"{render_ground(b)} is not <: {render_ground(base)}", 2)
    if holds(a, b, table):
        return fail(f"{render_ground(a)} <: {render_ground(b)}", 3)
    if holds(b, a, table):
        return fail(f"{render_ground(b)} <: {render_ground(a)}", 4)
    checked = 4
    for c in universe:
        checked += 1
        if isinstance(c, NullT):
            continue
        if holds(c, a, table) and holds(c, b, table):
            return fail(
                f"{render_ground(c)} is a common subtype of "
                f"{render_ground(a)} and {render_ground(b)}", checked)
    return PrincipleReport("declared-negation", True, None, checked)


def export_order(table: ClassTable, universe, name: str = "") -> FiniteLattice:
    """The subtype order on the universe as an explicit finite poset.

    Bounded by construction (Null and Object are always present);
    whether it is a complete lattice is computed, not assumed.
    """
    elements = tuple(render_ground(t) for t in universe)
    down = tuple(
        frozenset(j for j, s in enumerate(universe) if holds(s, t, table))
        for t in universe
    )
    return FiniteLattice(elements, down, name=name or "nominal-order")
