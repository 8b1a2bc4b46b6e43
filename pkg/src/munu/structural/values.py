"""Finite-depth denotations for arrow-free structural types.

A ValueTree is a finite tree built from unit, tagged base atoms,
injections and pairs; its depth is counted in edges, so leaves have
depth 0. denote(T, d) enumerates the trees of depth at most d that
inhabit T, reading mu inductively (completed trees only). With
truncated=True every mu position may additionally be cut off by a
Stub, which is the depth-d reading of the greatest fixed point; Stub
never appears otherwise.

Enumeration lists a base's own tagged atoms; membership is the wider
relation, accepting an atom of any declared sub-base, the way a value
of a smaller type is also a value of the larger one. Tag sets default
to Int {-1,0,1}, Nat {0,1}, Bool {false,true}.

oracle_subtype checks denotation inclusion by membership, so only the
left-hand type is ever enumerated and base atoms land on the wider
relation rather than on label equality. constructor_as_endo turns a body
with a hole into an explicit endofunction on the powerset of the
body's own value universe, which the lattice module can then drive.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DslError, GuardExceeded, PreconditionError
from ..lattice.endo import MonotoneEndo, check_monotone
from ..lattice.order import FiniteLattice, max_elements, powerset_lattice
from .syntax import (
    Arrow,
    Base,
    BaseOrder,
    Mu,
    Prod,
    StructType,
    Sum,
    Top,
    Unit,
    Var,
    check_contractive,
    free_vars,
    render_type,
    unfold,
)

MAX_DENOTE_DEPTH = 6
DEFAULT_MAX_VALUES = 200_000


class ValueTree:
    __slots__ = ()


@dataclass(frozen=True)
class UnitV(ValueTree):
    pass


@dataclass(frozen=True)
class BaseV(ValueTree):
    base: str
    tag: str


@dataclass(frozen=True)
class InL(ValueTree):
    value: ValueTree


@dataclass(frozen=True)
class InR(ValueTree):
    value: ValueTree


@dataclass(frozen=True)
class Pair(ValueTree):
    left: ValueTree
    right: ValueTree


@dataclass(frozen=True)
class Stub(ValueTree):
    pass


UNIT_V = UnitV()
STUB = Stub()


def value_depth(v: ValueTree) -> int:
    if isinstance(v, (InL, InR)):
        return 1 + value_depth(v.value)
    if isinstance(v, Pair):
        return 1 + max(value_depth(v.left), value_depth(v.right))
    return 0


def render_value(v: ValueTree) -> str:
    if isinstance(v, UnitV):
        return "unit"
    if isinstance(v, Stub):
        return "stub"
    if isinstance(v, BaseV):
        return f"{v.base}({v.tag})"
    if isinstance(v, InL):
        return f"inl({render_value(v.value)})"
    if isinstance(v, InR):
        return f"inr({render_value(v.value)})"
    if isinstance(v, Pair):
        return f"({render_value(v.left)},{render_value(v.right)})"
    raise AssertionError(f"unrenderable value {v!r}")


def value_sort_key(v: ValueTree):
    return (value_depth(v), render_value(v))


@dataclass(frozen=True)
class DenoteConfig:
    base_order: BaseOrder
    tags: tuple[tuple[str, tuple[str, ...]], ...]

    def tags_of(self, base: str) -> tuple[str, ...]:
        for name, tags in self.tags:
            if name == base:
                return tags
        return ()


def default_config() -> DenoteConfig:
    return DenoteConfig(
        base_order=BaseOrder.default(),
        tags=(("Bool", ("false", "true")), ("Nat", ("0", "1")), ("Int", ("-1", "0", "1"))),
    )


def _require_arrow_free(t: StructType):
    if isinstance(t, Arrow):
        raise PreconditionError("denotations are defined for the arrow-free fragment only")
    if isinstance(t, (Sum, Prod)):
        _require_arrow_free(t.left)
        _require_arrow_free(t.right)
    elif isinstance(t, Mu):
        _require_arrow_free(t.body)


class _Denoter:
    def __init__(self, config: DenoteConfig, max_values: int, env: dict[str, frozenset] | None = None):
        self.config = config
        self.max_values = max_values
        self.env = env or {}
        self.memo: dict = {}

    def _guard(self, values: frozenset) -> frozenset:
        if len(values) > self.max_values:
            raise GuardExceeded(
                f"denotation exceeds {self.max_values} values; lower the depth or shrink the tag sets")
        return values

    def base_atoms(self, name: str) -> frozenset:
        return frozenset(BaseV(name, tag) for tag in self.config.tags_of(name))

    def top(self, d: int, truncated: bool) -> frozenset:
        key = ("top", d, truncated)
        if key in self.memo:
            return self.memo[key]
        leaves = {UNIT_V}
        for b in self.config.base_order.bases:
            for tag in self.config.tags_of(b):
                leaves.add(BaseV(b, tag))
        if truncated:
            leaves.add(STUB)
        if d == 0:
            out = frozenset(leaves)
        else:
            below = self.top(d - 1, truncated)
            out = set(leaves)
            out |= {InL(v) for v in below}
            out |= {InR(v) for v in below}
            if len(below) ** 2 > self.max_values:
                raise GuardExceeded(
                    f"denotation exceeds {self.max_values} values; lower the depth or shrink the tag sets")
            out |= {Pair(a, b) for a in below for b in below}
            out = frozenset(out)
        self.memo[key] = self._guard(out)
        return self.memo[key]

    def denote(self, t: StructType, d: int, truncated: bool) -> frozenset:
        key = (t, d, truncated)
        if key in self.memo:
            return self.memo[key]
        out = self._compute(t, d, truncated)
        self.memo[key] = self._guard(out)
        return self.memo[key]

    def _compute(self, t: StructType, d: int, truncated: bool) -> frozenset:
        if isinstance(t, Unit):
            return frozenset({UNIT_V})
        if isinstance(t, Top):
            return self.top(d, truncated)
        if isinstance(t, Base):
            return self.base_atoms(t.name)
        if isinstance(t, Var):
            pool = self.env.get(t.name)
            if pool is None:
                raise PreconditionError(f"free variable {t.name!r} has no assigned value set")
            return frozenset(v for v in pool if value_depth(v) <= d)
        if isinstance(t, Mu):
            inner = self.denote(unfold(t), d, truncated)
            return inner | {STUB} if truncated else inner
        if d == 0:
            return frozenset()
        if isinstance(t, Sum):
            left = self.denote(t.left, d - 1, truncated)
            right = self.denote(t.right, d - 1, truncated)
            return frozenset({InL(v) for v in left} | {InR(v) for v in right})
        if isinstance(t, Prod):
            left = self.denote(t.left, d - 1, truncated)
            right = self.denote(t.right, d - 1, truncated)
            if len(left) * len(right) > self.max_values:
                raise GuardExceeded(
                    f"denotation exceeds {self.max_values} values; lower the depth or shrink the tag sets")
            return frozenset(Pair(a, b) for a in left for b in right)
        raise PreconditionError(f"no denotation for {render_type(t)}")


def denote(t: StructType, depth: int, truncated: bool = False,
           config: DenoteConfig | None = None,
           max_values: int = DEFAULT_MAX_VALUES) -> frozenset:
    if depth < 0:
        raise PreconditionError("depth must be non-negative")
    if depth > MAX_DENOTE_DEPTH:
        raise GuardExceeded(f"depth {depth} exceeds the guard of {MAX_DENOTE_DEPTH}")
    _require_arrow_free(t)
    cfg = config if config is not None else default_config()
    return _Denoter(cfg, max_values).denote(t, depth, truncated)


def inhabits(v: ValueTree, t: StructType, config: DenoteConfig | None = None) -> bool:
    """Membership of a completed tree in a type's denotation, at any depth."""
    cfg = config if config is not None else default_config()
    _require_arrow_free(t)

    memo: dict = {}

    def go(v: ValueTree, t: StructType) -> bool:
        key = (v, t)
        if key in memo:
            return memo[key]
        memo[key] = result = rules(v, t)
        return result

    def rules(v: ValueTree, t: StructType) -> bool:
        if isinstance(t, Top):
            return True
        if isinstance(t, Mu):
            return go(v, unfold(t))
        if isinstance(t, Unit):
            return isinstance(v, UnitV)
        if isinstance(t, Base):
            return (isinstance(v, BaseV)
                    and cfg.base_order.leq(v.base, t.name)
                    and v.tag in cfg.tags_of(v.base))
        if isinstance(t, Sum):
            if isinstance(v, InL):
                return go(v.value, t.left)
            if isinstance(v, InR):
                return go(v.value, t.right)
            return False
        if isinstance(t, Prod):
            return isinstance(v, Pair) and go(v.left, t.left) and go(v.right, t.right)
        raise PreconditionError(f"membership undefined for {render_type(t)}")

    if isinstance(v, Stub):
        raise PreconditionError("membership is defined for completed trees only")
    return go(v, t)


def oracle_subtype(s: StructType, t: StructType, depth: int,
                   config: DenoteConfig | None = None,
                   max_values: int = DEFAULT_MAX_VALUES):
    """Denotation inclusion at every depth up to `depth`.

    Implemented by enumerating the left side once and testing
    membership on the right, which is equivalent and keeps Top on the
    right cheap. Returns a PrincipleReport.
    """
    from ..reports import PrincipleReport

    cfg = config if config is not None else default_config()
    values = denote(s, depth, False, cfg, max_values)
    checked = 0
    for v in sorted(values, key=value_sort_key):
        checked += 1
        if not inhabits(v, t, cfg):
            return PrincipleReport(
                principle="denotation-inclusion",
                holds=False,
                counterexample=f"{render_value(v)} inhabits {render_type(s)} but not {render_type(t)}",
                checked_count=checked,
            )
    return PrincipleReport("denotation-inclusion", True, None, checked)


@dataclass(frozen=True)
class EndoStage:
    universe: tuple[ValueTree, ...]
    lattice: FiniteLattice
    endo: MonotoneEndo


def constructor_as_endo(body: StructType, hole: str, universe_depth: int,
                        config: DenoteConfig | None = None,
                        max_values: int = DEFAULT_MAX_VALUES,
                        name: str = "F") -> EndoStage:
    """Tabulate `X -> [[body]](X)` on the powerset of a value universe.

    For a body whose hole is guarded the universe is the completed
    denotation of the body's own recursive type, which the map fixes;
    a bare hole (the identity) gets the full tree universe at the
    given depth instead. Feeding the result to lattice.lfp / gfp
    reproduces the finite-depth inductive/coinductive denotations.
    """
    if universe_depth < 0:
        raise PreconditionError("universe_depth must be non-negative")
    if universe_depth > MAX_DENOTE_DEPTH:
        raise GuardExceeded(f"depth {universe_depth} exceeds the guard of {MAX_DENOTE_DEPTH}")
    _require_arrow_free(body)
    cfg = config if config is not None else default_config()
    stray = free_vars(body) - {hole}
    if stray:
        raise PreconditionError(f"body has a free variable besides the hole: {sorted(stray)[0]!r}")
    try:
        check_contractive(Mu(hole, body))
        guarded = True
    except DslError:
        guarded = False
    plain = _Denoter(cfg, max_values)
    if guarded:
        universe = plain.denote(Mu(hole, body), universe_depth, False)
    else:
        universe = plain.top(universe_depth, False)
    limit = max_elements()
    if 1 << len(universe) > limit:
        raise GuardExceeded(
            f"powerset of {len(universe)} values exceeds the element guard of {limit} "
            "(override with MUNU_MAX_ELEMENTS)")
    ordered = tuple(sorted(universe, key=value_sort_key))
    labels = tuple(render_value(v) for v in ordered)
    lat = powerset_lattice(labels, name=f"P({render_type(body)})")
    index = {v: i for i, v in enumerate(ordered)}

    def label_of(mask: int) -> str:
        return "{" + ",".join(labels[i] for i in range(len(ordered)) if mask >> i & 1) + "}"

    table: dict[str, str] = {}
    for mask in range(1 << len(ordered)):
        pool = frozenset(v for i, v in enumerate(ordered) if mask >> i & 1)
        evaluator = _Denoter(cfg, max_values, env={hole: pool})
        image = evaluator.denote(body, universe_depth, False)
        image_mask = 0
        for v in image:
            if v not in index:
                raise PreconditionError(
                    f"body image leaves the universe at {render_value(v)}; "
                    "this should not happen for arrow-free bodies")
            image_mask |= 1 << index[v]
        table[label_of(mask)] = label_of(image_mask)
    endo = MonotoneEndo(domain=lat, table=table, name=name)
    report = check_monotone(endo)
    assert report.holds, "constructor endofunction failed the monotonicity scan"
    return EndoStage(universe=ordered, lattice=lat, endo=endo)
