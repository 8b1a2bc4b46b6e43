"""Seeded random structural types for property sweeps.

Generation tracks binder guardedness, so every output is closed and
contractive by construction; no validate-and-retry loop. Binders get
throwaway names and the result is canonicalized before returning.

The subtype pair generator keeps Top out of the left-hand side and
rejects left sides whose depth-bounded denotation would blow past a
small budget, so the denotation oracle stays cheap no matter the
draw. `widen` loosens a type at covariant positions only (it refuses
arrows), which makes `s <: widen(s)` hold by construction and gives
the sweeps a steady supply of positive cases.
"""

from __future__ import annotations

import random

from ..errors import GuardExceeded, PreconditionError
from .syntax import (
    TOP,
    UNIT,
    Arrow,
    Base,
    BaseOrder,
    Mu,
    Prod,
    StructType,
    Sum,
    Var,
    canonicalize,
    free_vars,
)
from .values import DenoteConfig, default_config, denote

PAIR_DENOTE_BUDGET = 20_000


def _fresh(level: int, taken) -> str:
    name = f"V{level}"
    while name in taken:
        name = "_" + name
    return name


def _leaf(rng: random.Random, scope: dict[str, bool], bases: tuple[str, ...],
          top_ok: bool) -> StructType:
    guarded = [n for n, g in scope.items() if g]
    choices: list[StructType] = [UNIT]
    choices.extend(Base(b) for b in bases)
    if top_ok:
        choices.append(TOP)
    choices.extend(Var(n) for n in guarded)
    return rng.choice(choices)


def _gen(rng: random.Random, budget: int, scope: dict[str, bool], level: int,
         bases: tuple[str, ...], *, top_ok: bool, arrows: bool) -> StructType:
    if budget <= 1:
        return _leaf(rng, scope, bases, top_ok)
    kinds = ["leaf", "mu"]
    if budget >= 3:
        kinds = ["sum", "sum", "sum", "prod", "prod", "leaf", "mu"]
        if arrows:
            kinds.extend(["arrow", "arrow"])
    kind = rng.choice(kinds)
    if kind == "leaf":
        return _leaf(rng, scope, bases, top_ok)
    if kind == "mu":
        name = _fresh(level, set(scope) | set(bases))
        inner = dict(scope)
        inner[name] = False
        return Mu(name, _gen(rng, budget - 1, inner, level + 1, bases,
                             top_ok=top_ok, arrows=arrows))
    inner = {n: True for n in scope}
    left_budget = rng.randint(1, max(1, budget - 2))
    right_budget = max(1, budget - 1 - left_budget)
    left = _gen(rng, left_budget, inner, level, bases, top_ok=top_ok, arrows=arrows)
    right = _gen(rng, right_budget, inner, level, bases, top_ok=top_ok, arrows=arrows)
    if kind == "sum":
        return Sum(left, right)
    if kind == "prod":
        return Prod(left, right)
    return Arrow(left, right)


def random_closed_type(rng: random.Random, max_size: int = 12,
                       base_order: BaseOrder | None = None, *,
                       top_ok: bool = True, arrows: bool = False) -> StructType:
    order = base_order if base_order is not None else BaseOrder.default()
    t = _gen(rng, max_size, {}, 0, order.bases, top_ok=top_ok, arrows=arrows)
    return canonicalize(t)


def random_mu_type(rng: random.Random, max_size: int = 12,
                   base_order: BaseOrder | None = None, *,
                   arrows: bool = False) -> Mu:
    """A top-level mu whose binder is used somewhere, when one turns up.

    Bodies that never mention the binder are legal, so after a bounded
    number of draws the last candidate is returned as-is.
    """
    order = base_order if base_order is not None else BaseOrder.default()
    name = _fresh(0, set(order.bases))
    body = UNIT
    for _ in range(50):
        body = _gen(rng, max(1, max_size - 1), {name: False}, 1, order.bases,
                    top_ok=True, arrows=arrows)
        if name in free_vars(body):
            break
    t = canonicalize(Mu(name, body))
    assert isinstance(t, Mu)
    return t


def widen(rng: random.Random, t: StructType,
          base_order: BaseOrder | None = None, prob: float = 0.15) -> StructType:
    """Loosen covariant positions: subtree to Top, base to a super-base."""
    order = base_order if base_order is not None else BaseOrder.default()

    def go(u: StructType) -> StructType:
        if isinstance(u, Arrow):
            raise PreconditionError("widening is defined for the arrow-free fragment only")
        if rng.random() < prob:
            return TOP
        if isinstance(u, Base):
            ups = [b for b in order.bases if b != u.name and order.leq(u.name, b)]
            if ups and rng.random() < 0.5:
                return Base(rng.choice(ups))
            return u
        if isinstance(u, Sum):
            return Sum(go(u.left), go(u.right))
        if isinstance(u, Prod):
            return Prod(go(u.left), go(u.right))
        if isinstance(u, Mu):
            return Mu(u.var, go(u.body))
        return u

    return canonicalize(go(t))


def random_subtype_pair(rng: random.Random, max_size: int = 12,
                        config: DenoteConfig | None = None, *,
                        oracle_depth: int = 4) -> tuple[StructType, StructType]:
    """An arrow-free pair (s, t) fit for the denotation oracle.

    Half the draws take t as a widening of s, so positive verdicts
    show up reliably; the rest pair s with an independent type, which
    usually fails and exercises counterexample reporting.
    """
    cfg = config if config is not None else default_config()
    order = cfg.base_order
    while True:
        s = random_closed_type(rng, max_size, order, top_ok=False, arrows=False)
        try:
            denote(s, oracle_depth, False, cfg, max_values=PAIR_DENOTE_BUDGET)
        except GuardExceeded:
            continue
        break
    if rng.random() < 0.5:
        t = widen(rng, s, order)
    else:
        t = random_closed_type(rng, max_size, order, top_ok=True, arrows=False)
    return s, t
