"""CLI exit codes, JSON stability, and artifact layout.

Everything runs in-process through main(argv); subprocess spawning is
left to the acceptance suite.
"""

import csv
import json
import math
import os

import pytest

from sectorroots import PolyExpFunction, Polynomial, save_function
from sectorroots.cli import (_parse_complex, _parse_region, canonical_json,
                             main)

PI = math.pi


@pytest.fixture
def square_spec(tmp_path):
    path = str(tmp_path / "square.json")
    save_function(PolyExpFunction(Polynomial((0.0, 2.0)),
                                  Polynomial((0.0,)), -1.0), path)
    return path


@pytest.fixture
def exp_spec(tmp_path):
    path = str(tmp_path / "exp.json")
    save_function(PolyExpFunction(Polynomial((1.0,)),
                                  Polynomial((0.0, 1.0)), 1.0), path)
    return path


@pytest.fixture
def const_spec(tmp_path):
    path = str(tmp_path / "const.json")
    save_function(PolyExpFunction(Polynomial(()),
                                  Polynomial((0.0, 1.0)), 0.5), path)
    return path


def test_parse_helpers():
    assert _parse_complex("1.5") == 1.5 + 0j
    assert _parse_complex("1,-2") == 1 - 2j
    with pytest.raises(ValueError):
        _parse_complex("1,2,3")
    assert _parse_region("-1,-2,3,4").x0 == -1.0
    with pytest.raises(ValueError):
        _parse_region("1,2,3")


def test_rays_human_and_json(capsys):
    assert main(["rays", "--example", "1"]) == 0
    text = capsys.readouterr().out
    assert "d = 2" in text
    assert main(["rays", "--example", "1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["d"] == 2
    assert payload["rays"][0] == pytest.approx(0.0, abs=1e-9)
    assert payload["rays"][1] == pytest.approx(PI, abs=1e-9)
    assert payload["values"][0] == pytest.approx([1.0, 0.0], abs=1e-8)


def test_rays_constant_function_errors(const_spec, capsys):
    assert main(["rays", "--spec", const_spec]) == 2
    assert "no critical rays" in capsys.readouterr().err


def test_missing_function_source_errors(capsys):
    assert main(["order", "--rgrid", "4,6,9,13"]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_region_errors(square_spec, capsys):
    code = main(["roots", "--spec", square_spec, "--target", "0",
                 "--region", "1,2,3", "--sector", "0,3.14159"])
    assert code == 2


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_roots_square(square_spec, tmp_path, capsys):
    out = str(tmp_path / "art")
    code = main(["roots", "--spec", square_spec, "--target", "0",
                 "--region=-2,-2,2,2",
                 "--sector", f"0,{PI:.15f}", "--out", out, "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["winding"] == 2
    locs = sorted(rec["location"][0] for rec in payload["records"])
    assert locs == pytest.approx([-1.0, 1.0], abs=1e-9)
    with open(os.path.join(out, "roots.csv")) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    assert {r["multiplicity"] for r in rows} == {"1"}


def test_roots_sector_violation_exits_one(square_spec):
    # r0 below the root moduli so the sector check actually applies
    code = main(["roots", "--spec", square_spec, "--target", "0",
                 "--region=-2,-2,2,2", "--sector", "0,0.5", "--r0", "0.5"])
    assert code == 1


def test_enumerate_json_round_trip(capsys, tmp_path):
    out = str(tmp_path / "enum")
    assert main(["enumerate", "--dmax", "3", "--json", "--out", out]) == 0
    text = capsys.readouterr().out
    payload = json.loads(text)
    assert canonical_json(payload) == text
    assert payload["violations"] == []
    with open(os.path.join(out, "enumerate.json")) as fh:
        assert fh.read() == text


def test_kernel_check(capsys):
    assert main(["kernel-check"]) == 0
    assert "max |residue - quadrature|" in capsys.readouterr().out


def test_order_exp(exp_spec, tmp_path):
    out = str(tmp_path / "ord")
    code = main(["order", "--spec", exp_spec,
                 "--rgrid", "4,6,9,13.5,20", "--out", out])
    assert code == 0
    with open(os.path.join(out, "order.json")) as fh:
        payload = json.load(fh)
    assert payload["order"] == pytest.approx(1.0, abs=1e-3)


def test_counting_square(square_spec, tmp_path, capsys):
    out = str(tmp_path / "cnt")
    code = main(["counting", "--spec", square_spec, "--target", "0",
                 "--rgrid", "2,3", "--out", out])
    assert code == 0
    table = capsys.readouterr().out
    assert table.splitlines()[0].startswith("# r")
    with open(os.path.join(out, "counting.csv")) as fh:
        rows = list(csv.DictReader(fh))
    assert [r["n"] for r in rows] == ["2", "2"]
    assert float(rows[0]["N"]) == pytest.approx(2.0 * math.log(2.0),
                                                abs=1e-9)


def test_product_auto_terms(capsys):
    code = main(["product", "--rho", "0.3333333333333333",
                 "--eval=-0.5", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["one_point_rays"] == pytest.approx([PI / 2, 3 * PI / 2],
                                                      abs=1e-9)
    assert payload["n_terms"] >= 64


def test_canonical_json_stable():
    blob = {"b": [1.5, -0.25], "a": {"z": 1e-300}}
    once = canonical_json(blob)
    assert canonical_json(json.loads(once)) == once
    assert once.endswith("\n")
