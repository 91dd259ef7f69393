import sys
import os
sys.path.append(os.pardir)
import io
import json
import pytest
from orbikit.models import (
    ActionSpec, Classification, EulerSummary, FiberEnumeration,
    FundamentalSummary, QuotientResult, Report, Signature, SpindleReport,
    StrataPoset
)
from orbikit.controllers.cli_controller import (
    EXIT_DOMAIN, EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
)
from orbikit.fixtures import torus_half_turn

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data_file(name):
    return os.path.join(DATA_DIR, name)


def test_euler(capsys):
    assert run(["euler", "O0(2,3,7)"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("-1/42") == 3

    assert run(["euler", "O0(2,3,7)", "--format", "json"]) == EXIT_OK
    summary = EulerSummary.model_validate_json(capsys.readouterr().out)
    assert summary.agree
    assert summary.signature == Signature.from_text("O0(7,3,2)")


def test_classify(capsys):
    assert run(["classify", "O0(5)"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Bad"

    assert run(["classify", "O0()*(2,3,5)", "--format", "json"]) == EXIT_OK
    result = Classification.model_validate_json(capsys.readouterr().out)
    assert result.geometry.value == "Spherical"


def test_pi1(capsys):
    assert run(["pi1", "O0(2,3,5)", "--format", "json"]) == EXIT_OK
    assert FundamentalSummary.model_validate_json(capsys.readouterr().out).order == 60

    assert run(["pi1", "O0(2,2,2,2)", "--max-cosets", "500"]) == EXIT_OK
    assert "order: infinite-or-exceeded" in capsys.readouterr().out


def test_double(capsys):
    assert run(["double", "O0(3)*(2,5)"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "O0(5,3,3,2)"
    assert run(["double", "O0(2,2)"]) == EXIT_DOMAIN
    assert run(["double", "O0()*()", "--format", "json"]) == EXIT_OK
    assert Signature.model_validate_json(capsys.readouterr().out) == Signature()


def test_signature_sources(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr("sys.stdin", io.StringIO("O0(2,3,5)\n"))
    assert run(["classify", "-"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Spherical"

    text_file = tmp_path / "sig.txt"
    text_file.write_text("O1()")
    assert run(["classify", "--file", str(text_file)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Euclidean"

    json_file = tmp_path / "sig.json"
    json_file.write_text(json.dumps({"orientable": True, "genus": 0, "cones": [2, 3, 7]}))
    assert run(["classify", "--file", str(json_file)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Hyperbolic"

    assert run(["classify", "O1()", "--file", str(text_file)]) == EXIT_USAGE
    assert run(["classify"]) == EXIT_USAGE
    assert run(["classify", "--file", str(tmp_path / "missing.txt")]) == EXIT_USAGE

    bad_json = tmp_path / "bad.json"
    bad_json.write_text(json.dumps({"orientable": True, "genus": "zero"}))
    assert run(["classify", "--file", str(bad_json)]) == EXIT_USAGE


def test_usage_and_domain_errors(capsys):
    assert run([]) == EXIT_USAGE
    assert run(["frobnicate"]) == EXIT_USAGE
    assert run(["gauss-bonnet", "-p", "two", "-q", "3"]) == EXIT_USAGE
    capsys.readouterr()

    assert run(["euler", "O0(2,"]) == EXIT_DOMAIN
    err = capsys.readouterr().err
    assert err.startswith("E1001: ")
    assert err.strip().count("\n") == 0

    assert run(["pi1", "N1()"]) == EXIT_DOMAIN
    assert run(["wps", "euler", "-w", "2,4"]) == EXIT_DOMAIN
    assert run(["wps", "euler", "-w", "2,x"]) == EXIT_USAGE
    assert run(["area", "O0(3)", "-K", "1"]) == EXIT_DOMAIN


def test_help(capsys):
    assert run(["--help"]) == EXIT_OK
    assert run(["cover", "verify", "--help"]) == EXIT_OK
    assert "certificate" in capsys.readouterr().out


def test_cover_verify(capsys):
    assert run(["cover", "verify", data_file("teardrop_degree3.json")]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert out.startswith("FAIL")
    assert "[ng] euler" in out

    assert run(["cover", "verify", data_file("torus_over_pillowcase.json"),
                "--format", "json"]) == EXIT_OK
    report = Report.model_validate_json(capsys.readouterr().out)
    assert report.passed
    assert run(["cover", "verify", data_file("cone6_over_cone2.json")]) == EXIT_OK


def test_cover_verify_invalid(tmp_path):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps({"base": {"kind": "regular"}, "degree": 2}))
    assert run(["cover", "verify", str(path)]) == EXIT_USAGE
    path.write_text("{not json")
    assert run(["cover", "verify", str(path)]) == EXIT_USAGE
    path.write_text(json.dumps({
        "base": {"kind": "closed", "signature": "O0(3)"},
        "cover": {"kind": "closed", "signature": "O0()"},
        "degree": 3, "fibers": []}))
    assert run(["cover", "verify", str(path)]) == EXIT_DOMAIN


def test_cover_enumerate(capsys):
    assert run(["cover", "enumerate", "-n", "6", "-r", "3"]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["{2}", "{3,6}", "{6,6,6}"]
    assert run(["cover", "enumerate", "-n", "2", "-r", "2", "--format", "json"]) == EXIT_OK
    result = FiberEnumeration.model_validate_json(capsys.readouterr().out)
    assert result.fibers == [(1,), (2, 2)]


def test_quotient_and_fixture(capsys, tmp_path):
    assert run(["quotient", "--fixture", "torus-half-turn"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "signature: O0(2,2,2,2)" in out
    assert "chi: 0 = 2 * 0" in out

    path = tmp_path / "icosahedron.json"
    assert run(["fixture", "icosahedron-z5", "-o", str(path)]) == EXIT_OK
    capsys.readouterr()
    assert ActionSpec.model_validate_json(path.read_text()).surface is not None
    assert run(["quotient", "--action", str(path), "--format", "json"]) == EXIT_OK
    result = QuotientResult.model_validate_json(capsys.readouterr().out)
    assert result.signature == Signature.from_text("O0(5,5)")
    assert result.chi_cover == 5 * result.chi_quotient

    assert run(["quotient"]) == EXIT_USAGE
    assert run(["fixture", "no-such-fixture"]) == EXIT_USAGE


def test_cover_from_quotient(capsys, tmp_path):
    subgroup = tmp_path / "half_turn.json"
    subgroup.write_text(ActionSpec.from_mappings(None, [torus_half_turn()]).model_dump_json())
    assert run(["cover", "from-quotient", "--fixture", "torus-quarter-turn",
                "--subgroup", str(subgroup)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("O0(2,2,2,2) -> O0(4,4,2), degree 2")


def test_wps(capsys):
    assert run(["wps", "strata", "-w", "1,2,3", "--format", "json"]) == EXIT_OK
    poset = StrataPoset.model_validate_json(capsys.readouterr().out)
    assert [s.indices for s in poset.singular_entries()] == [(1,), (2,)]
    assert run(["wps", "euler", "-w", "1,2,2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"
    assert run(["wps", "football", "-w", "3,1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "O0(3)"
    assert run(["wps", "football", "-w", "1,2,3"]) == EXIT_DOMAIN


def test_geometry_commands(capsys):
    assert run(["gauss-bonnet", "-p", "2", "-q", "3", "--format", "json"]) == EXIT_OK
    report = SpindleReport.model_validate_json(capsys.readouterr().out)
    assert report.rel_error <= 1e-6
    assert run(["gauss-bonnet", "-p", "2", "-q", "3", "--intervals", "8",
                "--tolerance", "1e-12"]) == EXIT_FAILED
    assert run(["gauss-bonnet", "-p", "2", "-q", "3", "--intervals", "7"]) == EXIT_DOMAIN

    assert run(["poincare-hopf", "O0(2,3)", "--zeros", "2:1,3:1"]) == EXIT_OK
    assert run(["poincare-hopf", "O0(2,3)", "--zeros", "2:1"]) == EXIT_FAILED
    assert run(["poincare-hopf", "O0(2,3)", "--zeros", "2-1"]) == EXIT_USAGE
    capsys.readouterr()

    assert run(["area", "O0(2,3,7)", "-K", "-1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1/21*pi"
    assert run(["area", "O0(2,2,2,2)", "-K", "-1"]) == EXIT_DOMAIN
    assert run(["area", "O0()", "-K", "1/0"]) == EXIT_USAGE
