"""Poset/lattice construction against independent brute-force oracles."""

import pytest
from hypothesis import given, strategies as st

from munu.errors import GuardExceeded, OrderError
from munu.lattice import build_poset, build_powerset, parallel


def brute_meet(leq, elements, a, b):
    """Independent bound scan: greatest common lower bound or None."""
    lower = [x for x in elements if leq(x, a) and leq(x, b)]
    for m in lower:
        if all(leq(x, m) for x in lower):
            return m
    return None


def brute_join(leq, elements, a, b):
    upper = [x for x in elements if leq(a, x) and leq(b, x)]
    for j in upper:
        if all(leq(j, x) for x in upper):
            return j
    return None


def diamond():
    return build_poset(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        name="diamond",
    )


def test_diamond_meet_of_incomparables_is_bottom():
    lat = diamond()
    assert lat.meet("a", "b") == "bot"
    assert lat.join("a", "b") == "top"
    assert lat.is_complete_lattice
    assert lat.bottom == "bot" and lat.top == "top"


def test_diamond_matches_brute_force_tables():
    lat = diamond()
    for a in lat.elements:
        for b in lat.elements:
            assert lat.meet(a, b) == brute_meet(lat.leq, lat.elements, a, b)
            assert lat.join(a, b) == brute_join(lat.leq, lat.elements, a, b)


def test_transitive_closure_is_taken():
    lat = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert lat.leq("a", "c")
    assert not lat.leq("c", "a")


def test_cycle_is_rejected():
    with pytest.raises(OrderError):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_duplicate_element_is_rejected():
    with pytest.raises(OrderError):
        build_poset(["a", "a"], [])


def test_unknown_label_in_order_is_rejected():
    with pytest.raises(OrderError):
        build_poset(["a"], [("a", "zzz")])


def test_two_incomparable_points_form_no_lattice():
    lat = build_poset(["a", "b"], [])
    assert lat.meet("a", "b") is None
    assert lat.join("a", "b") is None
    assert not lat.is_complete_lattice
    assert lat.bottom is None and lat.top is None
    assert parallel(lat, "a", "b")


def test_powerset_of_three_is_boolean():
    lat = build_powerset(["1", "2", "3"])
    assert len(lat.elements) == 8
    assert lat.bottom == "{}"
    assert lat.top == "{1,2,3}"
    assert lat.is_complete_lattice
    comp = lat.complement_table()
    assert comp["{1,2}"] == "{3}"
    assert comp["{}"] == "{1,2,3}"
    assert lat.meet("{1,2}", "{2,3}") == "{2}"
    assert lat.join("{1}", "{3}") == "{1,3}"


def test_powerset_labels_and_member_order():
    lat = build_powerset(["x", "y"])
    assert lat.elements == ("{}", "{x}", "{y}", "{x,y}")


def test_powerset_base_guard():
    with pytest.raises(GuardExceeded):
        build_powerset([str(i) for i in range(11)])


def test_element_guard_env_override(monkeypatch):
    monkeypatch.setenv("MUNU_MAX_ELEMENTS", "3")
    with pytest.raises(GuardExceeded):
        build_poset(["a", "b", "c", "d"], [])
    monkeypatch.setenv("MUNU_MAX_ELEMENTS", "4")
    assert len(build_poset(["a", "b", "c", "d"], []).elements) == 4


def test_meet_join_of_sets_and_empty_bounds():
    lat = diamond()
    assert lat.join_of([]) == "bot"
    assert lat.meet_of([]) == "top"
    assert lat.join_of(["a", "b"]) == "top"
    assert lat.meet_of(["a", "b", "top"]) == "bot"


@st.composite
def random_posets(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    labels = [f"e{i}" for i in range(n)]
    pairs = draw(st.lists(
        st.tuples(st.sampled_from(labels), st.sampled_from(labels)),
        max_size=10,
    ))
    # orient every pair to respect the label index, so no cycles
    oriented = [

        (a, b) if int(a[1:]) <= int(b[1:]) else (b, a)
        for a, b in pairs
    ]
    return labels, oriented


@given(random_posets())
def test_poset_axioms_hold_after_closure(data):
    labels, pairs = data
    lat = build_poset(labels, pairs)
    for a in labels:
        assert lat.leq(a, a)
        for b in labels:
            if lat.leq(a, b) and lat.leq(b, a):
                assert a == b
            for c in labels:
                if lat.leq(a, b) and lat.leq(b, c):
                    assert lat.leq(a, c)


@given(random_posets())
def test_meets_and_joins_match_brute_force(data):
    labels, pairs = data
    lat = build_poset(labels, pairs)
    for a in labels:
        for b in labels:
            assert lat.meet(a, b) == brute_meet(lat.leq, labels, a, b)
            assert lat.join(a, b) == brute_join(lat.leq, labels, a, b)


@given(st.integers(min_value=0, max_value=5))
def test_powerset_complement_is_set_complement(n):
    base = [str(i) for i in range(n)]
    lat = build_powerset(base)
    comp = lat.complement_table()
    for mask in range(1 << n):
        members = {b for k, b in enumerate(base) if mask >> k & 1}
        label = "{" + ",".join(b for b in base if b in members) + "}"
        expect = "{" + ",".join(b for b in base if b not in members) + "}"
        assert comp[label] == expect
