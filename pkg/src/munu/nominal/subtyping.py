"""Subtyping over ground nominal types.

Rules, tried in order: Object on the right and Null on the left
always hold; equal types hold; Object on the left or Null on the
right (the prior rules aside) never hold; otherwise the left type's
instantiated superclass chain is climbed within the goal. The chain
either reaches an application with the right side's head, where
interval containment decides ([L1,U1] inside [L2,U2] meaning
L2 <: L1 and U1 <: U2), reaches the right side itself, or runs out
at Object and fails, so a reported failure names the last goal with
both sides intact rather than a bare `Object <: ...` leaf.

Goals currently being evaluated are assumed to hold when re-entered;
since every rule is a conjunction of subgoals, a failure under that
generous reading is a genuine failure, and a top-level success
exhibits a self-consistent set of goals. Completed goals are settled
in a per-query memo, so each distinct goal is evaluated at most once
and the visit count stays within the square of the ground closure,
which is computed up front without running any subtype queries.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import GuardExceeded
from .tables import (
    App,
    ClassTable,
    GroundType,
    NullT,
    ObjectT,
    Plain,
    ground_closure,
    render_ground,
)

DEFAULT_MAX_GOALS = 100_000


@dataclass(frozen=True)
class NomVerdict:
    holds: bool
    assumption_trace: tuple[str, ...]
    failure_pair: str | None
    visited_count: int
    goal_bound: int

    def __post_init__(self):
        assert self.holds == (self.failure_pair is None)


class _Query:
    def __init__(self, table: ClassTable, max_goals: int):
        self.table = table
        self.max_goals = max_goals
        self.settled: dict = {}
        self.in_progress: set = set()
        self.trace: list[str] = []
        self.visited = 0
        self.failure: str | None = None

    def check(self, s: GroundType, t: GroundType) -> bool:
        goal = (s, t)
        if goal in self.settled:
            return self.settled[goal]
        if goal in self.in_progress:
            self.trace.append(f"{render_ground(s)} <: {render_ground(t)}")
            return True
        self.visited += 1
        if self.visited > self.max_goals:
            raise GuardExceeded(f"subtype query exceeded {self.max_goals} goals")
        self.in_progress.add(goal)
        try:
            result = self._rules(s, t)
        finally:
            self.in_progress.discard(goal)
        self.settled[goal] = result
        if not result and self.failure is None:
            self.failure = f"{render_ground(s)} <: {render_ground(t)}"
        return result

    def _rules(self, s: GroundType, t: GroundType) -> bool:
        if isinstance(t, ObjectT) or isinstance(s, NullT) or s == t:
            return True
        if isinstance(s, ObjectT) or isinstance(t, NullT):
            return False
        cur = s
        while True:
            if isinstance(cur, App) and isinstance(t, App) and cur.name == t.name:
                i1, i2 = cur.interval, t.interval
                return self.check(i2.lower, i1.lower) and self.check(i1.upper, i2.upper)
            if cur == t:
                return True
            if not isinstance(cur, (Plain, App)):
                return False
            cur = self.table.ground_super(cur)


def subtype(s: GroundType, t: GroundType, table: ClassTable,
            max_goals: int = DEFAULT_MAX_GOALS) -> NomVerdict:
    closure = ground_closure(table, s, t)
    bound = len(closure) ** 2
    query = _Query(table, max_goals)
    holds = query.check(s, t)
    assert query.visited <= bound, "visit count escaped the closure bound"
    return NomVerdict(
        holds=holds,
        assumption_trace=tuple(query.trace),
        failure_pair=None if holds else query.failure,
        visited_count=query.visited,
        goal_bound=bound,
    )


def holds(s: GroundType, t: GroundType, table: ClassTable) -> bool:
    """Bare verdict for sweeps that do not need the accounting."""
    return _Query(table, DEFAULT_MAX_GOALS).check(s, t)
