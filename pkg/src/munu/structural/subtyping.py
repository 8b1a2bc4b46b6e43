"""Coinductive subtyping for equi-recursive structural types.

A goal pair already in progress is assumed to hold; a goal fails only
when some finite decomposition path hits a mismatch. Because every
rule decomposes a goal into a conjunction (there is never a choice of
rule), settled results can be memoised within a query: a failure
anywhere fails the whole query, and on overall success the visited set
is exactly a self-justifying set of pairs.

The set of reachable goals is finite: each side of a reachable goal is
a subterm position of one of the inputs with its binders closed over,
so the visited count is bounded by (|S| + |T|)**2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Arrow,
    Base,
    BaseOrder,
    Mu,
    Prod,
    StructType,
    Sum,
    Top,
    Var,
    node_count,
    render_type,
    unfold,
)


@dataclass(frozen=True)
class SubtypeVerdict:
    holds: bool
    assumption_trace: tuple[str, ...]
    failure_pair: str | None
    visited_count: int
    goal_bound: int


@dataclass(frozen=True)
class EquivalenceVerdict:
    holds: bool
    forward: SubtypeVerdict
    backward: SubtypeVerdict


def _render_goal(s: StructType, t: StructType) -> str:
    return f"{render_type(s)} <: {render_type(t)}"


def subtype(s: StructType, t: StructType, base_order: BaseOrder | None = None) -> SubtypeVerdict:
    order = base_order if base_order is not None else BaseOrder.default()
    memo: dict[tuple[StructType, StructType], bool] = {}
    in_progress: set[tuple[StructType, StructType]] = set()
    trace: list[str] = []
    failure: list[str] = []

    def fail(goal) -> bool:
        if not failure:
            failure.append(_render_goal(*goal))
        return False

    def solve(a: StructType, b: StructType) -> bool:
        goal = (a, b)
        if goal in memo:
            return memo[goal]
        if goal in in_progress:
            return True
        in_progress.add(goal)
        trace.append(_render_goal(a, b))
        result = rules(a, b, goal)
        in_progress.discard(goal)
        memo[goal] = result
        return result

    def rules(a: StructType, b: StructType, goal) -> bool:
        if isinstance(b, Top):
            return True
        if a == b:
            return True
        if isinstance(a, Mu):
            return solve(unfold(a), b)
        if isinstance(b, Mu):
            return solve(a, unfold(b))
        if isinstance(a, Base) and isinstance(b, Base):
            return order.leq(a.name, b.name) or fail(goal)
        if isinstance(a, Sum) and isinstance(b, Sum):
            return (solve(a.left, b.left) and solve(a.right, b.right)) or fail(goal)
        if isinstance(a, Prod) and isinstance(b, Prod):
            return (solve(a.left, b.left) and solve(a.right, b.right)) or fail(goal)
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            return (solve(b.domain, a.domain) and solve(a.codomain, b.codomain)) or fail(goal)
        assert not isinstance(a, Var) and not isinstance(b, Var), "open type reached the checker"
        return fail(goal)

    holds = solve(s, t)
    bound = (node_count(s) + node_count(t)) ** 2
    return SubtypeVerdict(
        holds=holds,
        assumption_trace=tuple(trace),
        failure_pair=None if holds else (failure[0] if failure else _render_goal(s, t)),
        visited_count=len(trace),
        goal_bound=bound,
    )


def equivalent(s: StructType, t: StructType, base_order: BaseOrder | None = None) -> EquivalenceVerdict:
    """Mutual subtyping; fold/unfold of a mu type is the canonical case."""
    forward = subtype(s, t, base_order)
    backward = subtype(t, s, base_order)
    return EquivalenceVerdict(forward.holds and backward.holds, forward, backward)
