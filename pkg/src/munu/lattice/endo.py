"""Monotone endofunctions and their extremal fixed points.

lfp/gfp iterate from bottom/top until stationary, then re-verify the
result against the pre-/post-fixed scan, so a wrong answer cannot
escape silently. Both refuse endofunctions that have not passed
check_monotone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import OrderError, PreconditionError
from ..reports import PrincipleReport
from .order import FiniteLattice


@dataclass
class MonotoneEndo:
    """Total map on a lattice's elements, given as an explicit table.

    `certified_monotone` starts False and is set (once) by
    check_monotone; the fixed-point operations refuse uncertified maps.
    """

    domain: FiniteLattice
    table: dict[str, str]
    name: str = ""
    certified_monotone: bool = field(default=False, compare=False)

    def __post_init__(self):
        missing = [e for e in self.domain.elements if e not in self.table]
        if missing:
            raise OrderError(f"endofunction table is not total; missing {missing[0]!r}")
        for src, dst in self.table.items():
            self.domain.index(src)
            self.domain.index(dst)

    def __call__(self, x: str) -> str:
        return self.table[x]


def check_monotone(f: MonotoneEndo) -> PrincipleReport:
    """Scan all comparable pairs for order preservation."""
    lat = f.domain
    checked = 0
    for a in lat.elements:
        for b in lat.up_set(a):
            checked += 1
            if not lat.leq(f(a), f(b)):
                return PrincipleReport(
                    principle="monotonicity",
                    holds=False,
                    counterexample=f"{a} <= {b} but f({a}) = {f(a)} is not <= f({b}) = {f(b)}",
                    checked_count=checked,
                )
    f.certified_monotone = True
    return PrincipleReport("monotonicity", True, None, checked)


def _require_certified(f: MonotoneEndo):
    if not f.certified_monotone:
        raise PreconditionError("endofunction is not certified monotone; run check_monotone first")


def _require_complete(f: MonotoneEndo):
    if not f.domain.is_complete_lattice:
        raise PreconditionError("fixed points need a complete lattice (bounds or meets/joins missing)")


def pre_fixed_points(f: MonotoneEndo) -> tuple[str, ...]:
    """Elements x with f(x) <= x, in element order."""
    lat = f.domain
    return tuple(x for x in lat.elements if lat.leq(f(x), x))


def post_fixed_points(f: MonotoneEndo) -> tuple[str, ...]:
    """Elements x with x <= f(x), in element order."""
    lat = f.domain
    return tuple(x for x in lat.elements if lat.leq(x, f(x)))


def lfp(f: MonotoneEndo) -> str:
    """Least fixed point by iteration from bottom, verified extremal."""
    _require_certified(f)
    _require_complete(f)
    lat = f.domain
    x = lat.bottom
    for _ in range(len(lat.elements) + 1):
        nxt = f(x)
        if nxt == x:
            break
        x = nxt
    else:
        raise OrderError("iteration from bottom did not become stationary")
    for p in pre_fixed_points(f):
        if not lat.leq(x, p):
            raise OrderError(f"iteration result {x!r} is not below pre-fixed point {p!r}")
    return x


def gfp(f: MonotoneEndo) -> str:
    """Greatest fixed point by iteration from top, verified extremal."""
    _require_certified(f)
    _require_complete(f)
    lat = f.domain
    x = lat.top
    for _ in range(len(lat.elements) + 1):
        nxt = f(x)
        if nxt == x:
            break
        x = nxt
    else:
        raise OrderError("iteration from top did not become stationary")
    for p in post_fixed_points(f):
        if not lat.leq(p, x):
            raise OrderError(f"iteration result {x!r} is not above post-fixed point {p!r}")
    return x


def check_induction_principle(f: MonotoneEndo) -> PrincipleReport:
    """Every pre-fixed point bounds the least fixed point from above."""
    lat = f.domain
    mu = lfp(f)
    checked = 0
    for p in pre_fixed_points(f):
        checked += 1
        if not lat.leq(mu, p):
            return PrincipleReport(
                principle="induction",
                holds=False,
                counterexample=f"f({p}) <= {p} but lfp = {mu} is not <= {p}",
                checked_count=checked,
            )
    return PrincipleReport("induction", True, None, checked)


def check_coinduction_principle(f: MonotoneEndo) -> PrincipleReport:
    """Every post-fixed point sits below the greatest fixed point."""
    lat = f.domain
    nu = gfp(f)
    checked = 0
    for p in post_fixed_points(f):
        checked += 1
        if not lat.leq(p, nu):
            return PrincipleReport(
                principle="coinduction",
                holds=False,
                counterexample=f"{p} <= f({p}) but {p} is not <= gfp = {nu}",
                checked_count=checked,
            )
    return PrincipleReport("coinduction", True, None, checked)


def dual_endo(f: MonotoneEndo, boolean_lat: FiniteLattice | None = None) -> MonotoneEndo:
    """x -> not f(not x), with `not` the Boolean complement.

    Requires a Boolean lattice (complement total). The result is
    certified by a fresh monotonicity scan.
    """
    lat = boolean_lat if boolean_lat is not None else f.domain
    if lat is not f.domain:
        raise PreconditionError("dual_endo: lattice differs from the endofunction's domain")
    comp = lat.complement_table()
    table = {x: comp[f(comp[x])] for x in lat.elements}
    g = MonotoneEndo(domain=lat, table=table, name=f"dual({f.name})" if f.name else "dual")
    check_monotone(g)
    return g


def check_mu_nu_duality(f: MonotoneEndo) -> PrincipleReport:
    """gfp(f) equals the complement of lfp of the dual endofunction."""
    lat = f.domain
    comp = lat.complement_table()
    nu = gfp(f)
    g = dual_endo(f)
    if not g.certified_monotone:
        return PrincipleReport(
            principle="duality",
            holds=False,
            counterexample="dual endofunction failed the monotonicity scan",
            checked_count=1,
        )
    via_dual = comp[lfp(g)]
    if nu != via_dual:
        return PrincipleReport(
            principle="duality",
            holds=False,
            counterexample=f"gfp = {nu} but complement of dual lfp = {via_dual}",
            checked_count=1,
        )
    return PrincipleReport("duality", True, None, 1)
