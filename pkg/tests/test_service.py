"""Endpoint wiring, error mapping and envelope schema compliance."""

import json

import jsonschema
import pytest
from fastapi.testclient import TestClient

from munu.reports import REPORT_SCHEMA
from munu.service import create_app

SUCC_LAT = """
lattice P
powerset: 0 1

fun F on P
{} -> {0}
{0} -> {0,1}
{1} -> {0,1}
{0,1} -> {0,1}
"""

WINDOW_TBL = """
class Window
class ColoredWindow extends Window
class NonColoredWindow extends Window
"""


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _valid(payload):
    jsonschema.validate(payload, REPORT_SCHEMA)
    return payload


def test_health_and_schema(client):
    assert client.get("/health").json() == {"status": "ok"}
    assert client.get("/schema").json()["$id"] == "munu.report/v1"


def test_lattice_lfp(client):
    resp = client.post("/lattice/lfp", json={"source": SUCC_LAT, "fun": "F"})
    assert resp.status_code == 200
    payload = _valid(resp.json())
    assert payload["value"] == "{0,1}"
    assert payload["holds"] is None


def test_lattice_principles(client):
    for path in ("/lattice/induction", "/lattice/coinduction", "/lattice/dual"):
        payload = _valid(client.post(
            path, json={"source": SUCC_LAT, "fun": "F"}).json())
        assert payload["holds"] is True


def test_lattice_neg(client):
    payload = _valid(client.post("/lattice/neg", json={
        "source": SUCC_LAT, "lattice": "P", "x": "{0}"}).json())
    assert payload["value"]["value"] == "{1}"


def test_structural_sub_and_denote(client):
    payload = _valid(client.post("/structural/sub", json={
        "left": "mu X . Unit + Int * X", "right": "Top"}).json())
    assert payload["holds"] is True

    payload = _valid(client.post("/structural/denote", json={
        "type": "mu X . Unit + Int * X", "depth": 3}).json())
    assert payload["value"] == [
        "inl(unit)",
        "inr((Int(-1),inl(unit)))",
        "inr((Int(0),inl(unit)))",
        "inr((Int(1),inl(unit)))",
    ]


def test_structural_endo(client):
    payload = _valid(client.post("/structural/endo", json={
        "body": "Unit + Int * X", "hole": "X", "depth": 3}).json())
    assert payload["holds"] is True
    assert payload["value"]["elements"] == 16
    assert payload["value"]["lfp"] == payload["value"]["gfp"]


def test_nominal_endpoints(client):
    payload = _valid(client.post("/nominal/sub", json={
        "table": WINDOW_TBL, "left": "ColoredWindow", "right": "Window"}).json())
    assert payload["holds"] is True

    payload = _valid(client.post("/nominal/neg", json={
        "table": WINDOW_TBL, "subject": "ColoredWindow", "depth": 1}).json())
    assert payload["value"]["result"] == "NonColoredWindow"

    payload = _valid(client.post("/nominal/negcheck", json={
        "table": WINDOW_TBL, "neg": "NonColoredWindow",
        "pos": "ColoredWindow", "base": "Window", "depth": 1}).json())
    assert payload["holds"] is True


def test_least_pre_subreports_carry_notions(client):
    table = ("generic class Collection[T]\n"
             "class Apple\nclass Orange\n")
    payload = _valid(client.post("/nominal/least-pre", json={
        "table": table, "name": "Collection", "depth": 1}).json())
    notions = [r["notion"] for r in payload["reports"]]
    assert notions == ["literal", "family"]
    family = payload["reports"][1]["value"]
    assert family["family_least_exists"] is False
    assert family["no_least_witnesses"] is not None


def test_dsl_error_maps_to_422_with_position(client):
    resp = client.post("/structural/sub", json={
        "left": "mu X . (Unit", "right": "Top"})
    assert resp.status_code == 422
    detail = resp.json()["detail"]
    assert detail["error"] == "DslError"
    assert detail["line"] == 1
    assert detail["col"] >= 1


def test_unknown_fun_maps_to_422(client):
    resp = client.post("/lattice/lfp", json={"source": SUCC_LAT, "fun": "G"})
    assert resp.status_code == 422
    assert resp.json()["detail"]["error"] == "DslError"


def test_guard_maps_to_422(client):
    resp = client.post("/structural/denote", json={
        "type": "Top", "depth": 9})
    assert resp.status_code == 422
    assert resp.json()["detail"]["error"] == "GuardExceeded"


def test_check_all_includes_every_extension(client):
    files = {
        "a.lat": SUCC_LAT,
        "b.ty": "type N = mu X . Unit + X\n",
        "c.tbl": WINDOW_TBL,
    }
    payload = _valid(client.post("/check/all", json={
        "files": files, "seed": 3}).json())
    assert payload["holds"] is True
    assert payload["seed"] == 3
    commands = " ".join(r["command"] for r in payload["reports"])
    assert "a.lat" in commands and "b.ty" in commands and "c.tbl" in commands


def test_check_all_is_deterministic(client):
    files = {"a.lat": SUCC_LAT, "c.tbl": WINDOW_TBL}
    one = client.post("/check/all", json={"files": files, "seed": 11}).json()
    two = client.post("/check/all", json={"files": files, "seed": 11}).json()
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)


def test_envelope_rejects_unknown_fields():
    from munu.service.models import Report

    with pytest.raises(Exception):
        Report(command="x", bogus=1)
