import csv
import json

import pytest

from nstep_lab.cli import discover_commands, exit_code_for, get_run_aliases
from nstep_lab.lib.errors import CertificationFailure, DiscrepancyError, GraphError, ParameterError
from nstep_lab.lib.report import to_jsonable


def test_every_experiment_has_a_topic():
    commands = discover_commands()
    runs = {name: spec for name, spec in commands.items() if name.startswith("run:")}
    assert len(runs) >= 15
    assert all(spec.get("topic") for spec in runs.values())
    assert {"init", "list"} <= set(commands)


def test_aliases_strip_the_run_prefix():
    aliases = get_run_aliases(discover_commands())
    assert aliases["delta-mu0"] == "run:delta-mu0"
    assert "init" not in aliases


@pytest.mark.parametrize("error,code", [
    (CertificationFailure("x"), 3),
    (DiscrepancyError("x"), 3),
    (GraphError("x"), 2),
    (FileNotFoundError("x"), 4),
    (json.JSONDecodeError("x", "", 0), 4),
    (RuntimeError("x"), 1),
])
def test_exit_codes(error, code):
    assert exit_code_for(error) == code


def test_non_finite_values_serialize_as_strings():
    assert to_jsonable({"girth": float("inf"), "gap": float("nan")}) == {"girth": "inf", "gap": "nan"}


def test_list(run_cli):
    code, out, _ = run_cli("list")
    assert code == 0
    catalog = json.loads(out)
    assert len(catalog) >= 15
    assert all(entry["topic"] for entry in catalog)


def test_unknown_command(run_cli):
    code, _, _ = run_cli("no-such-experiment")
    assert code == 2


def test_report_shape(run_report):
    report = run_report("delta-mu0", "--r", "2")
    assert report["experiment"] == "delta-mu0"
    assert report["config"] == {"r": 2}
    assert set(report) >= {"version", "tolerances", "results", "checks", "passed", "generated_at"}
    assert run_report("run:delta-mu0", "--r", "2")["results"] == report["results"]


def test_save_writes_to_output_dir(run_cli, isolated, monkeypatch):
    monkeypatch.setenv("NSTEP_OUTPUT_DIR", str(isolated / "out"))
    code, out, _ = run_cli("bernoulli", "--n", "20", "--save")
    assert code == 0
    assert out == ""
    report = json.loads((isolated / "out" / "bernoulli.json").read_text())
    assert report["passed"]


def test_output_and_csv(run_cli, isolated):
    code, _, _ = run_cli("pod", "--r-max", "3", "-o", isolated / "pod.json", "--csv", isolated / "pod.csv")
    assert code == 0
    assert json.loads((isolated / "pod.json").read_text())["passed"]
    with open(isolated / "pod.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    assert [row["r"] for row in rows] == ["1", "2", "3"]


def test_failed_check_still_writes_report(run_cli):
    code, out, err = run_cli("hypotheses", "--graph", "square", "--g0", "5")
    assert code == 3
    assert json.loads(out)["checks"]["girth"] is False
    assert "failed checks" in err


def test_missing_measure_file(run_cli):
    code, _, _ = run_cli("barycenter", "--measure", "missing-measure.json")
    assert code == 4


def test_seed_is_recorded(run_report, isolated, monkeypatch):
    monkeypatch.setenv("NSTEP_SEED", "11")
    report = run_report("labelling", "--graph", "petersen")
    assert report["config"]["seed"] == 11
    assert run_report("labelling", "--graph", "petersen", "--seed", "11")["results"] == report["results"]


def test_invalid_config_file(run_cli, isolated):
    path = isolated / "bad.json"
    path.write_text(json.dumps({"seed": -1}))
    code, _, err = run_cli("--config", path, "delta-mu0")
    assert code == 2
    assert "seed" in err


def test_missing_env_file(run_cli):
    code, _, _ = run_cli("--env", "nowhere.env", "delta-mu0")
    assert code == 4


def test_env_file_sets_the_seed(run_report, isolated, monkeypatch):
    monkeypatch.setenv("NSTEP_SEED", "0")
    env = isolated / "run.env"
    env.write_text("NSTEP_SEED=13\n")
    report = run_report("--env", env, "labelling", "--graph", "petersen")
    assert report["config"]["seed"] == 13


def test_init_project(run_cli, isolated):
    code, out, _ = run_cli("init", "--project")
    assert code == 0
    assert "Initialized project" in out
    config = json.loads((isolated / ".nstep" / "config.json").read_text())
    assert config["defaults"]["random_group"]["c_abs"] == 64.0
    assert "NSTEP_SEED" in (isolated / ".nstep" / ".env").read_text()

    _, out, _ = run_cli("init", "--project")
    assert "already exists" in out
