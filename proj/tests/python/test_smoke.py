from fractions import Fraction

import pytest

import dq


def test_catalog_contains_the_basic_forms():
    names = dq.catalog_names()
    for n in ("theta", "f", "R", "U", "u", "G", "Utilde"):
        assert n in names


def test_R_leading_coefficients():
    c = dq.series_coefficients("R", 2)
    assert c[Fraction(-1, 2)] == 1
    assert c[Fraction(0)] == 24
    assert c[Fraction(1, 2)] == 276
    assert c[Fraction(1)] == 2048


def test_class_syntax_round_trip():
    v = dq.parse_class("4,2x2,1x8")
    assert v == [4, 2, 2] + [1] * 8
    assert dq.format_class(v) == "4,2x2,1x8"


def test_basic_classes_of_a_simple_type_example():
    r = dq.basic_classes("p2blow:10", "4,2x2,1x8")
    got = {(row["class"], row["set"]) for row in r["classes"]}
    assert got == {("3,1x10", "BF"), ("5,3x2,1x8", "BF")}
    assert r["k"] == 1


def test_small_surface_invariants_vanish():
    vals = dq.donaldson("p2blow:4", "1,0x4", "2,1x4", "1/2,1,0,-1,1/3", rmax=2, zorder=6)
    assert all(v["terms"] == [] for v in vals)


def test_structure_report_is_consistent():
    r = dq.structure("p2blow:9", "0,1,0x8", "3,1x9", "1,0,1/2,0x7", R=5, zorder=6)
    assert r["ok"] and r["k"] == 1


def test_blowup_polynomials():
    r = dq.blowup(4)
    assert r["B"][0] == ["1"]
    assert r["S"][1] == ["1"]
    assert r["B"][4] == ["-2"]


def test_theta_suite_passes():
    assert all(row["pass"] for row in dq.selftest("theta"))


def test_bad_input_raises():
    with pytest.raises(ValueError):
        dq.basic_classes("p2blow:9", "3,1x")
    with pytest.raises(ValueError):
        dq.series("no-such-form", 2)
