"""Implication and negation by bound scans.

x => y is the join of every a with meet(x, a) <= y. On a Heyting
algebra this join satisfies the adjunction a <= (x => y) iff
meet(a, x) <= y; on non-distributive lattices it can fail, so the
adjunction status is checked per query and reported, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from ..reports import PrincipleReport
from .order import FiniteLattice


@dataclass(frozen=True)
class ImplicationResult:
    value: str | None
    defined: bool
    qualifiers: tuple[str, ...]
    adjunction: PrincipleReport


def heyting_implication(lat: FiniteLattice, x: str, y: str) -> ImplicationResult:
    """Join of {a : meet(x, a) <= y}, plus the adjunction report.

    Requires meets for every pair scanned; an absent meet is a
    precondition failure, not a silent skip.
    """
    lat.index(x)
    lat.index(y)
    qualifiers = []
    for a in lat.elements:
        m = lat.meet(x, a)
        if m is None:
            raise PreconditionError(f"meet({x!r}, {a!r}) is undefined; implication needs meets")
        if lat.leq(m, y):
            qualifiers.append(a)
    value = lat.join_of(qualifiers)
    if value is None:
        report = PrincipleReport(
            principle="heyting-adjunction",
            holds=False,
            counterexample="the qualifying set has no least upper bound",
            checked_count=len(qualifiers),
        )
        return ImplicationResult(None, False, tuple(qualifiers), report)
    checked = 0
    for a in lat.elements:
        checked += 1
        lhs = lat.leq(a, value)
        rhs = lat.leq(lat.meet(a, x), y)
        if lhs != rhs:
            report = PrincipleReport(
                principle="heyting-adjunction",
                holds=False,
                counterexample=(
                    f"{a} <= ({x} => {y}) is {str(lhs).lower()} "
                    f"but meet({a}, {x}) <= {y} is {str(rhs).lower()}"
                ),
                checked_count=checked,
            )
            return ImplicationResult(value, True, tuple(qualifiers), report)
    report = PrincipleReport("heyting-adjunction", True, None, checked)
    return ImplicationResult(value, True, tuple(qualifiers), report)


def negation(lat: FiniteLattice, x: str) -> ImplicationResult:
    """x => bottom: the join of everything disjoint from x."""
    if lat.bottom is None:
        raise PreconditionError("negation needs a bottom element")
    return heyting_implication(lat, x, lat.bottom)
