import json
from argparse import Namespace
from pathlib import Path

import pytest

from nstep_lab.config import DEFAULT_TOLERANCES, Config


def test_defaults():
    config = Config()
    assert config.seed == 0
    assert config.tolerance("identity") == 1e-10
    assert config.get_default("random_group", "c_abs") == 64.0
    assert config.get_default("random_group", "missing", 7) == 7
    assert config.validate() == []


def test_from_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "output_dir": str(tmp_path / "reports"),
        "seed": 5,
        "tolerances": {"slack": 1e-6},
        "defaults": {"invariants": {"restarts": 9}},
    }))
    config = Config.from_file(path)
    assert config.output_dir == tmp_path / "reports"
    assert config.seed == 5
    assert config.tolerance("slack") == 1e-6
    assert config.tolerance("psd") == DEFAULT_TOLERANCES["psd"]
    assert config.get_default("invariants", "restarts") == 9
    assert config.get_default("invariants", "max_sweeps") == 50


def test_from_file_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        Config.from_file(tmp_path / "absent.json")


def test_layered_load(isolated, monkeypatch):
    home = isolated / ".nstep"
    home.mkdir()
    (home / "config.json").write_text(json.dumps({"seed": 3, "defaults": {"random_group": {"trials": 10}}}))
    monkeypatch.setenv("NSTEP_C_ABS", "12.5")
    config = Config.load()
    assert config.seed == 3
    assert config.get_default("random_group", "trials") == 10
    assert config.get_default("random_group", "c_abs") == 12.5


def test_env_overrides(isolated, monkeypatch):
    monkeypatch.setenv("NSTEP_OUTPUT_DIR", "/tmp/nstep-out")
    monkeypatch.setenv("NSTEP_SEED", "42")
    config = Config.from_env()
    assert config.output_dir == Path("/tmp/nstep-out")
    assert config.seed == 42


def test_validate_reports_problems():
    config = Config(seed=-1, tolerances={"slack": 0.0, "wobble": 1.0})
    config.defaults["random_group"]["c_abs"] = -2.0
    problems = config.validate()
    assert len(problems) == 4


def test_seed_for_records_the_seed():
    config = Config(seed=8)
    args = Namespace(seed=None)
    assert config.seed_for(args) == 8
    assert args.seed == 8
    assert config.seed_for(Namespace(seed=3)) == 3
    assert config.seed_for(Namespace()) == 8


def test_save_round_trip(tmp_path):
    path = Config(seed=4).save(tmp_path / "saved.json")
    assert Config.from_file(path).seed == 4
