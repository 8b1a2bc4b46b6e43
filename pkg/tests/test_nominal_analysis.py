"""Universe sweeps: families, fixed-point notions, negation, export."""

import pytest

from munu.errors import GuardExceeded, PreconditionError
from munu.nominal import (
    App,
    build_universe,
    classify,
    covariance_check,
    declared_negation_check,
    export_order,
    family_members,
    family_report,
    family_supertypes,
    free_type,
    greatest_family_subtype_check,
    interval_contains,
    least_pre_fixed_search,
    nominal_negation,
    parse_ground,
    parse_table,
    render_ground,
    well_formed_intervals,
)
from munu.nominal.subtyping import holds

WINDOW_SRC = """
class Window
class ColoredWindow extends Window
class NonColoredWindow extends Window
"""

LISTS_SRC = """
generic class Collection[T]
generic class List[T] extends Collection<T>
class Animal
class Dog extends Animal
"""


@pytest.fixture(scope="module")
def window():
    return parse_table(WINDOW_SRC)


@pytest.fixture(scope="module")
def lists():
    return parse_table(LISTS_SRC)


def test_universe_level_zero_and_growth(lists):
    u0 = build_universe(lists, 0)
    assert [render_ground(t) for t in u0] == ["Null", "Object", "Animal", "Dog"]
    u1 = build_universe(lists, 1)
    assert len(u1) == 24
    assert tuple(u1[:4]) == tuple(u0)
    with pytest.raises(GuardExceeded):
        build_universe(lists, 4)
    with pytest.raises(PreconditionError):
        build_universe(lists, -1)


def test_universe_without_generics_is_flat(window):
    assert build_universe(window, 0) == build_universe(window, 3)


def test_free_type(lists):
    assert render_ground(free_type(lists, "List")) == "List<?>"
    with pytest.raises(PreconditionError):
        free_type(lists, "Animal")


def test_family_members_and_supertypes(lists):
    u = build_universe(lists, 1)
    members = {render_ground(t) for t in family_members(lists, u, "List")}
    assert "Null" in members
    assert "List<Dog>" in members
    assert "Animal" not in members
    assert "Collection<?>" not in members

    supers = {render_ground(t) for t in family_supertypes(lists, u, "List")}
    assert "Object" in supers
    assert "Collection<?>" in supers
    assert "Dog" not in supers


def test_greatest_family_subtype(lists):
    u = build_universe(lists, 2)
    for name in lists.generics():
        report = greatest_family_subtype_check(lists, u, name)
        assert report.holds
        assert report.checked_count > 100


def test_classify_fbounded():
    table = parse_table("""
    generic class Comparable[T]
    class MyClass extends Comparable<MyClass>
    """)
    report = classify(table, "Comparable", parse_ground("MyClass", table))
    assert report.post_fixed
    assert not report.pre_fixed
    assert not report.fixed


def test_least_pre_fixed_family_gloss_fails_with_witnesses(lists):
    u = build_universe(lists, 1)
    report = least_pre_fixed_search(lists, u, "Collection")
    assert "Object" in report.pre_fixed
    assert not report.family_least_exists
    assert report.family_candidates == ()
    a, b = report.no_least_witnesses
    assert a.startswith("Collection<") and b.startswith("Collection<")


def test_covariance_sweep(lists):
    u = build_universe(lists, 1)
    for name in lists.generics():
        report = covariance_check(lists, u, name)
        assert report.holds
        assert report.checked_count > 1000


def test_application_subtyping_is_exactly_containment(window):
    # both directions, full sweep over a small universe
    table = parse_table("generic class Box[T]\nclass A\nclass B extends A")
    u = build_universe(table, 0)
    intervals = well_formed_intervals(table, u)
    assert len(intervals) > 5
    for i1 in intervals:
        for i2 in intervals:
            expected = interval_contains(table, i1, i2)
            got = holds(App("Box", i1), App("Box", i2), table)
            assert got == expected, (i1, i2)


def test_least_pre_fixed_degenerate_universe():
    table = parse_table("generic class F[T]")
    u = build_universe(table, 0)
    report = least_pre_fixed_search(table, u, "F")
    assert report.least == "Object"
    assert report.minimal_set == ("Object",)


def test_negation_window(window):
    u = build_universe(window, 1)
    report = nominal_negation(window, u, parse_ground("ColoredWindow", window))
    assert report.result == "NonColoredWindow"
    assert set(report.disjoint_set) == {"Null", "NonColoredWindow"}


def test_negation_collapses_with_an_unrelated_class():
    table = parse_table(WINDOW_SRC + "class String\n")
    u = build_universe(table, 1)
    report = nominal_negation(table, u, parse_ground("ColoredWindow", table))
    assert report.result == "Object"


def test_negation_of_extremes(window):
    u = build_universe(window, 1)
    assert nominal_negation(window, u, parse_ground("Null", window)).result == "Object"
    assert nominal_negation(window, u, parse_ground("Object", window)).result == "Null"


def test_negation_requires_a_universe_member(window, lists):
    u = build_universe(window, 1)
    with pytest.raises(PreconditionError, match="universe"):
        nominal_negation(window, u, parse_ground("List<?>", lists))


def test_family_report_record(lists):
    u = build_universe(lists, 1)
    rec = family_report(lists, u, "List")
    assert "Null" in rec.family_subtypes
    assert "Object" in rec.family_supertypes
    assert "List<Dog>" in rec.family_subtypes
    assert "Collection<Dog>" in rec.family_supertypes
    assert "Collection<Dog>" not in rec.family_subtypes


def test_declared_negation_check(window):
    u = build_universe(window, 1)
    cw = parse_ground("ColoredWindow", window)
    ncw = parse_ground("NonColoredWindow", window)
    w = parse_ground("Window", window)
    assert declared_negation_check(window, u, cw, ncw, w).holds
    bad = declared_negation_check(window, u, cw, cw, w)
    assert not bad.holds
    assert "<:" in bad.counterexample


def test_export_order_window(window):
    u = build_universe(window, 1)
    lat = export_order(window, u, "windows")
    assert lat.bottom == "Null"
    assert lat.top == "Object"
    assert lat.is_complete_lattice
    assert lat.join("ColoredWindow", "NonColoredWindow") == "Window"
    assert lat.meet("ColoredWindow", "NonColoredWindow") == "Null"


def test_export_order_generics(lists):
    # single inheritance plus interval arguments keeps pairwise bounds
    # available, so even this universe closes into a complete lattice
    u = build_universe(lists, 1)
    lat = export_order(lists, u)
    assert lat.bottom == "Null"
    assert lat.top == "Object"
    assert lat.is_complete_lattice
    assert lat.join("List<Dog>", "List<Animal>") == "List<[Dog,Animal]>"
    assert lat.meet("List<Dog>", "List<Animal>") == "Null"
    assert lat.join("Collection<Dog>", "List<Animal>") == "Collection<[Dog,Animal]>"
