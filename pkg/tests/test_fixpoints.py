"""Fixed points, induction/coinduction and duality.

The expected lfp of the successor-closure endofunction was frozen from
a set-based oracle that never touches the lattice code (see
oracle_succ_closure below, kept here so the two routes stay
independent).
"""

import random

import pytest

from munu.errors import PreconditionError
from munu.lattice import (
    MonotoneEndo,
    build_poset,
    build_powerset,
    check_coinduction_principle,
    check_induction_principle,
    check_monotone,
    check_mu_nu_duality,
    dual_endo,
    gfp,
    lfp,
    post_fixed_points,
    pre_fixed_points,
)
from munu.lattice.sampling import all_monotone_endos, random_monotone_endo


def subsets(base):
    for mask in range(1 << len(base)):
        yield frozenset(b for k, b in enumerate(base) if mask >> k & 1)


def label_of(base, s):
    return "{" + ",".join(b for b in base if b in s) + "}"


def succ_closure_endo(lat, base):
    """F(X) = {0} union {x+1 : x in X, x+1 <= 3} on P({0..3})."""
    table = {}
    for s in subsets(base):
        image = {"0"} | {str(int(x) + 1) for x in s if int(x) + 1 <= 3}
        table[label_of(base, s)] = label_of(base, image)
    return MonotoneEndo(domain=lat, table=table, name="F")


def oracle_succ_closure():
    """Independent lfp computation on raw sets."""
    x = frozenset()
    while True:
        nxt = frozenset({"0"} | {str(int(v) + 1) for v in x if int(v) + 1 <= 3})
        if nxt == x:
            return x
        x = nxt


def test_lfp_of_succ_closure_reaches_the_whole_chain():
    base = ["0", "1", "2", "3"]
    lat = build_powerset(base, name="P")
    f = succ_closure_endo(lat, base)
    assert check_monotone(f).holds
    assert lfp(f) == label_of(base, oracle_succ_closure())
    assert lfp(f) == "{0,1,2,3}"
    assert gfp(f) == "{0,1,2,3}"


def test_fixed_point_ops_refuse_uncertified_maps():
    base = ["0", "1"]
    lat = build_powerset(base)
    f = MonotoneEndo(domain=lat, table={e: e for e in lat.elements})
    with pytest.raises(PreconditionError):
        lfp(f)
    with pytest.raises(PreconditionError):
        gfp(f)


def test_monotone_failure_reports_the_offending_pair():
    lat = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c")], name="chain")
    f = MonotoneEndo(domain=lat, table={"a": "c", "b": "b", "c": "c"})
    report = check_monotone(f)
    assert not report.holds
    assert "a <= b" in report.counterexample
    assert not f.certified_monotone


def test_gfp_of_intersection_endo():
    base = ["1", "2"]
    lat = build_powerset(base)
    table = {}
    for s in subsets(base):
        table[label_of(base, s)] = label_of(base, s & {"1"})
    f = MonotoneEndo(domain=lat, table=table)
    assert check_monotone(f).holds
    assert gfp(f) == "{1}"
    assert lfp(f) == "{}"


def test_pre_fixed_points_of_constant_top():
    lat = build_poset(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    f = MonotoneEndo(domain=lat, table={e: "top" for e in lat.elements})
    assert check_monotone(f).holds
    assert pre_fixed_points(f) == ("top",)
    assert post_fixed_points(f) == ("bot", "a", "b", "top")
    assert lfp(f) == "top"


def test_induction_and_coinduction_on_succ_closure():
    base = ["0", "1", "2", "3"]
    lat = build_powerset(base)
    f = succ_closure_endo(lat, base)
    check_monotone(f)
    ind = check_induction_principle(f)
    coind = check_coinduction_principle(f)
    assert ind.holds and ind.principle == "induction"
    assert coind.holds and coind.principle == "coinduction"
    assert ind.checked_count == len(pre_fixed_points(f))


def test_dual_endo_matches_hand_computation():
    base = ["0", "1", "2", "3"]
    lat = build_powerset(base)
    f = succ_closure_endo(lat, base)
    check_monotone(f)
    g = dual_endo(f)
    assert g.certified_monotone
    universe = frozenset(base)
    for s in subsets(base):
        inner = universe - s
        f_inner = {"0"} | {str(int(v) + 1) for v in inner if int(v) + 1 <= 3}
        expect = universe - f_inner
        assert g(label_of(base, s)) == label_of(base, expect)


def test_mu_nu_duality_on_succ_closure():
    base = ["0", "1", "2", "3"]
    lat = build_powerset(base)
    f = succ_closure_endo(lat, base)
    check_monotone(f)
    report = check_mu_nu_duality(f)
    assert report.holds and report.principle == "duality"


def test_duality_refused_off_boolean_lattices():
    lat = build_poset(
        ["bot", "a", "top"],
        [("bot", "a"), ("a", "top")],
    )
    f = MonotoneEndo(domain=lat, table={e: e for e in lat.elements})
    check_monotone(f)
    from munu.errors import OrderError
    with pytest.raises(OrderError):
        dual_endo(f)


def test_exhaustive_chain_endos_satisfy_both_principles():
    lat = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    count = 0
    for f in all_monotone_endos(lat):
        assert check_monotone(f).holds
        assert check_induction_principle(f).holds
        assert check_coinduction_principle(f).holds
        count += 1
    # monotone self-maps of a 3-chain: binomial(2*3-1, 3)
    assert count == 10


def test_sampled_monotone_endos_are_deterministic_per_seed():
    lat = build_powerset(["1", "2", "3"])
    a = random_monotone_endo(lat, random.Random(7))
    b = random_monotone_endo(lat, random.Random(7))
    c = random_monotone_endo(lat, random.Random(8))
    assert a.table == b.table
    assert any(a.table[k] != c.table[k] for k in a.table) or a.table == c.table
