"""Implication/negation scans, including the adjunction failure mode."""

import pytest
from hypothesis import given, strategies as st

from munu.errors import PreconditionError
from munu.lattice import build_poset, build_powerset, heyting_implication, negation


def test_implication_on_powerset_of_two():
    lat = build_powerset(["1", "2"])
    res = heyting_implication(lat, "{1}", "{}")
    assert res.value == "{2}"
    assert res.defined
    assert res.adjunction.holds
    assert set(res.qualifiers) == {"{}", "{2}"}


def test_negation_on_powerset_is_complement():
    lat = build_powerset(["1", "2", "3"])
    res = negation(lat, "{1,2}")
    assert res.value == "{3}"
    assert res.adjunction.holds


def test_negation_of_extremes_on_bounded_lattices():
    diamond = build_poset(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    assert negation(diamond, "top").value == "bot"
    assert negation(diamond, "bot").value == "top"


def test_adjunction_fails_on_three_atom_diamond():
    # bot below a, b, c below top: join{x : x meet a = bot} = top,
    # but a itself does not satisfy a meet a <= bot.
    lat = build_poset(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"),
         ("a", "top"), ("b", "top"), ("c", "top")],
    )
    res = negation(lat, "a")
    assert res.value == "top"
    assert not res.adjunction.holds
    assert res.adjunction.counterexample is not None


def test_negation_of_extremes_still_holds_on_three_atom_diamond():
    lat = build_poset(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"),
         ("a", "top"), ("b", "top"), ("c", "top")],
    )
    top_res = negation(lat, "top")
    bot_res = negation(lat, "bot")
    assert top_res.value == "bot" and top_res.adjunction.holds
    assert bot_res.value == "top" and bot_res.adjunction.holds


def test_implication_needs_meets():
    lat = build_poset(["a", "b"], [])
    with pytest.raises(PreconditionError):
        heyting_implication(lat, "a", "b")


def test_negation_needs_bottom():
    lat = build_poset(["a", "b"], [])
    with pytest.raises(PreconditionError):
        negation(lat, "a")


@given(st.integers(min_value=0, max_value=4), st.data())
def test_powerset_negation_matches_complement_table(n, data):
    base = [str(i) for i in range(n)]
    lat = build_powerset(base)
    x = data.draw(st.sampled_from(lat.elements))
    res = negation(lat, x)
    assert res.value == lat.complement_table()[x]
    assert res.adjunction.holds
