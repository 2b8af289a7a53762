import pytest

import chowz


def test_catalog_has_every_step():
    ids = [s["id"] for s in chowz.catalog()]
    assert len(ids) == 14
    assert ids[0] == "S3.2-excise-D001"


def test_verify_selected_steps():
    doc = chowz.verify(["S3.2", "S3.3"])
    assert doc["schema"] == "chowz.report/1"
    assert [s["verdict"] for s in doc["steps"]] == ["pass", "pass"]
    assert doc["summary"]["passed"] == "2"


def test_verify_reports_moduli():
    (step,) = chowz.verify(["S5.1"])["steps"]
    assert step["verdict"] == "pass-with-moduli"
    assert step["moduli"] == ["w32"]


def test_unknown_step():
    with pytest.raises(KeyError):
        chowz.verify(["S9.9"])


def test_normal_forms():
    assert chowz.normal_form("M2bar", [], "48*lambda2^2*delta1") == "0"
    assert chowz.normal_form("M2bar", [], "0") == "0"
    assert chowz.normal_form("M2bar", [], "24*lambda2^2*delta1") != "0"


def test_parse_error():
    with pytest.raises(ValueError):
        chowz.normal_form("M2bar", [], "lambda1 +")


def test_graded_piece_and_kernel():
    piece = chowz.graded_piece("M2bar", ["24*lambda2*delta1"], 5)
    assert piece["invariants"] == ["2"]
    assert chowz.kernel("M2bar_to_M2bar-D1") == ["delta1"]
    assert chowz.ideal_equal("M2bar", ["delta1"], ["delta1", "delta1*lambda1"])
    assert not chowz.ideal_equal("M2bar-D000-D001", ["delta1"], ["2*delta1"], {"w32": 1})


def test_registry_export():
    doc = chowz.registry({"w32": 1, "w21": 0})
    assert doc["schema"] == "chowz.registry/1"
    assert any(r["name"] == "M2bar-D000-D001{w32=1}" for r in doc["rings"])
