"""Exit codes, exact stdout contracts, and JSON determinism for the munu CLI."""

import json
from pathlib import Path

import jsonschema
import pytest

from munu.cli import main
from munu.reports import REPORT_SCHEMA

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lat_lfp_sample(capsys):
    code, out, _ = run(capsys, "lat", "lfp", str(SAMPLES / "succ.lat"), "F")
    assert code == 0
    assert out == "{0,1,2,3}\n"


def test_st_sub_example(capsys):
    code, out, _ = run(capsys, "st", "sub", "mu X . Unit + Int * X", "Top")
    assert code == 0
    assert out == "true\n"


def test_nom_neg_example(capsys):
    code, out, _ = run(capsys, "nom", "neg", str(SAMPLES / "window.tbl"),
                       "ColoredWindow", "--depth", "1")
    assert code == 0
    assert out == "NonColoredWindow\n"


def test_false_query_still_exits_zero(capsys):
    code, out, _ = run(capsys, "st", "sub", "Top", "Unit")
    assert code == 0
    assert out == "false\n"


def test_failed_property_exits_one(capsys):
    code, out, _ = run(capsys, "nom", "negcheck", str(SAMPLES / "window.tbl"),
                       "ColoredWindow", "ColoredWindow", "Window")
    assert code == 1
    assert "FAIL" in out
    assert "ColoredWindow <: ColoredWindow" in out


def test_parse_error_exits_two_with_position(capsys):
    code, _, err = run(capsys, "st", "sub", "mu X . (Unit", "Top")
    assert code == 2
    assert err.startswith("error: line 1, col ")


def test_missing_file_exits_two(capsys):
    code, _, err = run(capsys, "lat", "lfp", str(SAMPLES / "no_such.lat"), "F")
    assert code == 2
    assert err.startswith("error: ")


def test_bad_usage_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lat", "bogus"])
    assert exc.value.code == 2


def test_json_flag_emits_canonical_envelope(capsys):
    code, out, _ = run(capsys, "st", "sub", "Nat", "Int", "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert payload["schema"] == "munu.report/v1"
    assert payload["command"] == "st sub"
    assert payload["holds"] is True
    assert out == json.dumps(payload, sort_keys=True, indent=2) + "\n"


def test_st_endo_reports_fixed_points(capsys):
    code, out, _ = run(capsys, "st", "endo", "Unit + Int * X")
    assert code == 0
    assert "lfp" in out and "gfp" in out
    assert "16" in out


def test_st_endo_rejects_canonical_hole(capsys):
    code, _, err = run(capsys, "st", "endo", "Unit + X0 * X0", "--hole", "X0")
    assert code == 2
    assert "binder" in err


def test_nom_least_pre_renders_witnesses(capsys):
    code, out, _ = run(capsys, "nom", "least-pre", str(SAMPLES / "lists.tbl"),
                       "Collection")
    assert code == 0
    assert "Collection<?>" in out
    assert "share no non-Null lower bound" in out


def test_check_all_passes_on_samples(capsys):
    code, out, _ = run(capsys, "check", "all", str(SAMPLES), "--seed", "7")
    assert code == 0
    assert "checks passed (seed 7)" in out


def test_check_all_json_is_byte_identical_across_runs(capsys):
    args = ("check", "all", str(SAMPLES), "--seed", "7", "--json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    jsonschema.validate(json.loads(out1), REPORT_SCHEMA)


def test_check_all_seed_changes_payload(capsys):
    _, out7, _ = run(capsys, "check", "all", str(SAMPLES), "--seed", "7", "--json")
    _, out8, _ = run(capsys, "check", "all", str(SAMPLES), "--seed", "8", "--json")
    assert out7 != out8


def test_check_all_rejects_empty_dir(tmp_path, capsys):
    code, _, err = run(capsys, "check", "all", str(tmp_path))
    assert code == 2
    assert "error: " in err


def test_schema_subcommand_prints_schema(capsys):
    code, out, _ = run(capsys, "schema")
    assert code == 0
    assert json.loads(out)["$id"] == "munu.report/v1"
