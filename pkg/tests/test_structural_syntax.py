"""Parser, renderer, canonical binders and the definitions format."""

import random

import pytest

from munu.errors import DslError, OrderError
from munu.structural import (
    node_count,
    parse_defs,
    parse_type,
    render_type,
    standard_library,
    unfold,
)
from munu.structural.sampling import random_closed_type
from munu.structural.syntax import (
    TOP,
    UNIT,
    Base,
    BaseOrder,
    Mu,
    Prod,
    Sum,
    Var,
    check_contractive,
    free_vars,
)

NAT = Mu("X0", Sum(UNIT, Var("X0")))


def test_atoms():
    assert parse_type("Unit") is UNIT
    assert parse_type("Top") is TOP
    assert parse_type("Int") == Base("Int")


def test_precedence():
    assert parse_type("Unit + Int * Top") == Sum(UNIT, Prod(Base("Int"), TOP))
    assert parse_type("(Unit + Int) * Top") == Prod(Sum(UNIT, Base("Int")), TOP)
    t = parse_type("Unit -> Unit -> Top")
    assert render_type(t) == "Unit -> Unit -> Top"
    assert render_type(parse_type("(Unit -> Unit) -> Top")) == "(Unit -> Unit) -> Top"


def test_sum_prod_left_assoc():
    t = parse_type("Int + Int + Int")
    assert t == Sum(Sum(Base("Int"), Base("Int")), Base("Int"))
    assert render_type(t) == "Int + Int + Int"


def test_binders_are_canonicalized():
    assert parse_type("mu A . Unit + A") == NAT
    assert parse_type("mu Zebra . Unit + Zebra") == parse_type("mu N . Unit + N")


def test_canonicalization_does_not_capture():
    t = parse_type("mu X1 . Unit + (mu X0 . X1 + X0)")
    expected = Mu("X0", Sum(UNIT, Mu("X1", Sum(Var("X0"), Var("X1")))))
    assert t == expected


def test_render_parse_roundtrip_library():
    for t in standard_library().values():
        assert parse_type(render_type(t)) == t


def test_render_parse_roundtrip_random():
    rng = random.Random(2024)
    for _ in range(150):
        t = random_closed_type(rng, 12, arrows=True)
        assert parse_type(render_type(t)) == t


def test_library_shapes():
    defs = standard_library()
    assert defs["Bool"] == Sum(UNIT, UNIT)
    assert defs["Nat"] == NAT
    nat2 = Mu("X1", Sum(UNIT, Var("X1")))
    assert defs["Int"] == Sum(Sum(NAT, UNIT), nat2)
    int_enc = Sum(Sum(Mu("X1", Sum(UNIT, Var("X1"))), UNIT),
                  Mu("X2", Sum(UNIT, Var("X2"))))
    assert defs["ListInt"] == Mu("X0", Sum(UNIT, Prod(int_enc, Var("X0"))))


def test_unfold_substitutes_whole_mu():
    defs = standard_library()
    assert unfold(defs["Nat"]) == Sum(UNIT, defs["Nat"])


def test_contractivity():
    with pytest.raises(DslError):
        parse_type("mu X . X")
    with pytest.raises(DslError):
        parse_type("mu X . mu Y . X")
    check_contractive(parse_type("mu X . mu Y . X + Y"))


def test_unbound_and_free_ok():
    with pytest.raises(DslError, match="unbound"):
        parse_type("Foo")
    t = parse_type("X + Unit", free_ok=("X",))
    assert t == Sum(Var("X"), UNIT)
    assert free_vars(t) == {"X"}


def test_binder_shadowing_a_base_rejected():
    with pytest.raises(DslError):
        parse_type("mu Int . Unit + Int")


def test_parse_errors_carry_positions():
    with pytest.raises(DslError) as exc:
        parse_type("Unit +")
    assert exc.value.line == 1
    with pytest.raises(DslError):
        parse_type("(Unit")
    with pytest.raises(DslError):
        parse_type("mu . X")


def test_node_count():
    assert node_count(parse_type("Unit + Int * Top")) == 5
    assert node_count(UNIT) == 1


def test_parse_defs_roundtrip():
    order, defs = parse_defs(
        """
        base Color
        base Red <= Color
        type Pair = Color * Color
        type Stream = mu S . Pair * S
        """
    )
    assert order.leq("Red", "Color")
    assert not order.leq("Color", "Red")
    assert defs["Stream"] == Mu("X0", Prod(Prod(Base("Color"), Base("Color")),
                                           Var("X0")))


def test_parse_defs_rejects_duplicates_and_unknowns():
    with pytest.raises(DslError):
        parse_defs("base A\nbase A")
    with pytest.raises(DslError):
        parse_defs("type T = Unit\ntype T = Top")
    with pytest.raises(DslError):
        parse_defs("base A <= Missing")


def test_base_order_rejects_cycles_and_reserved():
    with pytest.raises(OrderError):
        BaseOrder(("A", "B"), (("A", "B"), ("B", "A")))
    with pytest.raises(OrderError):
        BaseOrder(("Unit",), ())
    with pytest.raises(OrderError):
        BaseOrder(("X7",), ())
