import json
import subprocess
import sys

import pytest
import yaml

from pluricanonical.cli import main
from pluricanonical.config import fermat_config, load_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_ideal_reports(capsys):
    r = run_json(capsys, "ideal", "--sing", "6,1,1,1", "--k", "1")
    assert r["format_version"] == 1
    assert len(r["generators"]) == 10 and {sum(g) for g in r["generators"]} == {3}
    r = run_json(capsys, "ideal", "--sing", "8,1,1,1", "--k", "2")
    assert len(r["generators"]) == 66 and {sum(g) for g in r["generators"]} == {10}
    r = run_json(capsys, "ideal", "--sing", "2,1,1,1", "--k", "5")
    assert r["unit_ideal"] and r["negative_rays"] == []


def test_ideal_text(capsys):
    code, out, _ = run(capsys, "ideal", "--sing", "6,1,1,1")
    assert code == 0 and "10 minimal generators" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["ideal", "--sing", "6,2,2,1"],
        ["ideal", "--sing", "6,1,1,1", "--k", "0"],
        ["model", "no_such_model.cfg", "invariants"],
        ["classify", "--gmax", "1"],
        ["model", "z6_cy3", "verdict", "--dmax", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_validation_error_exit_code(capsys, tmp_path):
    data = load_config("z6_cy3")
    # declare a wrong rotation on one orbit
    data["factors"][0]["orbits"][0]["rotation"] = 5
    p = tmp_path / "bad.cfg"
    p.write_text(yaml.safe_dump(data))
    code, _, err = run(capsys, "model", str(p), "invariants")
    assert code == 3 and "validation" in err


def test_model_outputs(capsys):
    r = run_json(capsys, "model", "z6_cy3", "invariants")
    assert r["invariants"]["p_g"] == 1 and r["numerical_cy"]
    r = run_json(capsys, "model", "z6_cy3", "singular-locus")
    assert r["total_points"] == 36 and r["noncanonical"]
    r = run_json(capsys, "model", "z8_fake_cy", "plurigenus", "--d", "2..2")
    assert r["plurigenera"][0]["count"] == 3 and not r["plurigenera"][0]["exact"]
    r = run_json(capsys, "model", "z8_fake_cy", "verdict", "--dmax", "3")
    assert r["verdict"]["kind"] == "NOT_CY" and r["verdict"]["kodaira_at_least_2"]
    r = run_json(capsys, "model", "fermat_b3", "surface-report")
    assert r["row"]["K2"] == 72 and r["row"]["P2"] == 81 and r["exact"]


def test_verdict_text(capsys):
    code, out, _ = run(capsys, "model", "z6_cy3", "verdict", "--dmax", "3")
    assert code == 0 and "CONSISTENT_CY(3)" in out


def test_json_is_deterministic(capsys):
    argv = ["model", "z8_fake_cy", "singular-locus", "--json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_fractions_serialize_as_strings(capsys):
    r = run_json(capsys, "model", "fermat_b4", "surface-report")
    assert isinstance(r["row"]["K2_resolved"], (int, str))
    yaml.safe_load(json.dumps(r))


def test_classify_with_cyclic_groups(capsys):
    r = run_json(capsys, "classify", "--gmax", "3", "--r", "3", "--groups", "cyclic")
    got = {(c["group"], c["n"]) for c in r["candidates"]}
    assert ("Z6", 6) in got and ("Z8", 8) in got
    assert run_json(capsys, "classify", "--gmax", "2", "--r", "0")["types"] == []


def test_classify_bad_group_file(capsys, tmp_path):
    p = tmp_path / "g.yaml"
    p.write_text("groups:\n  - {name: X}\n")
    code, _, _ = run(capsys, "classify", "--gmax", "2", "--groups", str(p))
    assert code == 2


def test_builtin_fixture_matches_generator():
    from importlib import resources

    text = resources.files("pluricanonical").joinpath("fixtures").joinpath("fermat_b3.cfg").read_text()
    assert yaml.safe_load(text) == fermat_config(3)


def test_threaded_plurigenus_matches_serial(capsys, monkeypatch):
    argv = ["model", "z6_cy3", "plurigenus", "--d", "1..3"]
    serial = run_json(capsys, *argv)
    monkeypatch.setenv("PQ_THREADS", "2")
    assert run_json(capsys, *argv) == serial


def test_console_entry_point_runs():
    out = subprocess.run(
        [sys.executable, "-m", "pluricanonical.cli", "ideal", "--sing", "5,1,1"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert "1/5(1,1)" in out
