"""Parsing of the lattice/fun source format."""

import pytest

from munu.errors import DslError
from munu.lattice import lfp, check_monotone, parse_lab_source

DIAMOND_SRC = """\
# a four point diamond
lattice D
elements: bot, a, b, top
order: bot<=a, bot<=b, a<=top, b<=top
"""

POWERSET_WITH_FUN = """\
lattice P
powerset: 1 2

fun F on P
{} -> {1}
{1} -> {1}
{2} -> {1,2}
{1,2} -> {1,2}
"""


def test_parse_diamond():
    lab = parse_lab_source(DIAMOND_SRC)
    lat = lab.lattice("D")
    assert lat.meet("a", "b") == "bot"
    assert lat.is_complete_lattice


def test_parse_powerset_and_fun():
    lab = parse_lab_source(POWERSET_WITH_FUN)
    f = lab.endo("F")
    assert check_monotone(f).holds
    assert lfp(f) == "{1}"


def test_multiple_blocks_in_one_file():
    src = DIAMOND_SRC + "\n" + POWERSET_WITH_FUN
    lab = parse_lab_source(src)
    assert set(lab.lattices) == {"D", "P"}
    assert set(lab.endos) == {"F"}


def test_comments_and_blank_lines_ignored():
    src = "\n\n# hi\nlattice L\nelements: x\n# mid\norder:\n"
    lab = parse_lab_source(src)
    assert lab.lattice("L").elements == ("x",)


def test_error_carries_line_number():
    src = "lattice L\nelements: a\nnonsense here\n"
    with pytest.raises(DslError) as exc:
        parse_lab_source(src)
    assert exc.value.line == 3


def test_fun_must_reference_known_lattice():
    src = "fun F on Missing\nx -> x\n"
    with pytest.raises(DslError):
        parse_lab_source(src)


def test_fun_table_must_be_total():
    src = "lattice L\nelements: a, b\norder: a<=b\n\nfun F on L\na -> a\n"
    with pytest.raises(DslError):
        parse_lab_source(src)


def test_cycle_in_order_reports_block_line():
    src = "lattice L\nelements: a, b\norder: a<=b, b<=a\n"
    with pytest.raises(DslError) as exc:
        parse_lab_source(src)
    assert exc.value.line == 1


def test_powerset_cannot_mix_with_elements():
    src = "lattice L\npowerset: 1 2\nelements: a\n"
    with pytest.raises(DslError):
        parse_lab_source(src)


def test_unknown_element_name_errors():
    lab = parse_lab_source(DIAMOND_SRC)
    with pytest.raises(DslError):
        lab.lattice("nope")
    with pytest.raises(DslError):
        lab.endo("nope")
