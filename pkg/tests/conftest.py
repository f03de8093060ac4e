import json

import pytest

from nstep_lab.cli import main


@pytest.fixture
def isolated(tmp_path, monkeypatch):
    """Run with an empty home and cwd so no ~/.nstep or .nstep config leaks in."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    for name in ("NSTEP_OUTPUT_DIR", "NSTEP_SEED", "NSTEP_C_ABS"):
        monkeypatch.delenv(name, raising=False)
    return tmp_path


@pytest.fixture
def run_cli(isolated, capsys):
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""
    def run(*argv):
        try:
            main([str(a) for a in argv])
            code = 0
        except SystemExit as e:
            code = e.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def run_report(run_cli):
    """Invoke a report-producing command and parse its JSON."""
    def run(*argv):
        code, out, err = run_cli(*argv)
        assert code == 0, err
        return json.loads(out)

    return run
