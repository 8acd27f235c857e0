"""Python smoke tests against the pybind11 module."""

from fractions import Fraction

import pytest

import coindex


def frac(s):
    return Fraction(s)


def test_quadratic_camacho_sad():
    cfg = coindex.builtin_configs()["cs_nu1_quadratic"]
    report = coindex.verify(cfg)
    assert report["verdict"] == "PASS"
    assert report["pair"]["nu"] == 1
    assert report["pair"]["tangential"] is True
    assert len(report["singular_points"]) == 3
    cs = report["theorems"]["cs"]
    assert cs["sum"] == "-1"
    assert cs["target"] == "-1"
    assert [row["value"] for row in cs["residues"]] == ["-1/3"] * 3
    mult = report["theorems"]["multiplicity"]
    assert mult["sum"] == "3"


def test_bb_n3_table():
    report = coindex.verify(coindex.builtin_configs()["bb_n3_quadratic"])
    assert report["verdict"] == "PASS"
    bb = report["theorems"]["bb[e1^2]"]
    values = sorted(row["value"] for row in bb["residues"])
    assert values == ["0", "0", "0", "4", "4", "4", "4"]
    assert bb["sum"] == "16"
    assert report["theorems"]["bb[e2]"]["sum"] == "7"


def test_ls_sums_scale_with_nu():
    for name, expected in [("nu2_cubic", frac(3)), ("nu3_quartic", frac(4))]:
        report = coindex.verify(coindex.builtin_configs()[name])
        ls = report["theorems"]["ls[e1]"]
        assert frac(ls["sum"]) == expected
        assert ls["verdict"] == "PASS"


def test_float_mode_annotations():
    report = coindex.verify(coindex.builtin_configs()["cs_nu1_quadratic"], mode="float")
    cs = report["theorems"]["cs"]
    for row in cs["residues"]:
        numeric = row["numeric"]
        assert abs(numeric["re"] - float(frac(row["value"]))) < 1e-10
        assert abs(numeric["im"]) < 1e-10


def test_calibration_record():
    rec = coindex.calibrate()
    assert rec["consistent"] is True
    assert rec["ls_sign"] == 1
    assert rec["bb_sign"] == -1


def test_config_errors_are_typed():
    with pytest.raises(coindex.ConfigError):
        coindex.verify({"family": {"type": "nope", "n": 2}})
    with pytest.raises(coindex.ConfigError):
        coindex.verify("not json at all")


def test_cusp_singular_branch():
    report = coindex.verify(coindex.builtin_configs()["cusp_cs4"])
    assert report["verdict"] == "PASS"
    (key,) = [k for k in report["theorems"] if k.startswith("cs_singular")]
    assert report["theorems"][key]["sum"] == "0"
