import pytest

from spinbath.cli import main
from spinbath.presets import PRESETS
from spinbath.config import parse_config


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("scenario: overlap-vs-kappa\nN: 4\nkappa: 0.5\ndelta: 1.0\nseed: 1\n")
    return path


def test_run_success(small_config, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", str(small_config), "--output-dir", str(out), "--threads", "2"]) == 0
    assert (out / "summary.csv").exists() and (out / "manifest.json").exists()


def test_seed_override_changes_seeds(small_config, tmp_path):
    main(["run", str(small_config), "--output-dir", str(tmp_path / "a")])
    main(["run", str(small_config), "--output-dir", str(tmp_path / "b"), "--seed-override", "99"])
    assert (tmp_path / "a" / "summary.csv").read_text() != (tmp_path / "b" / "summary.csv").read_text()


def test_validate(small_config, capsys):
    assert main(["validate", str(small_config)]) == 0
    assert "ok" in capsys.readouterr().out


def test_validation_error_exit_code(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("scenario: evolve\nkappa: 1.5\n")
    assert main(["validate", str(bad)]) == 2
    assert main(["run", str(bad)]) == 2


def test_capacity_exit_code(tmp_path):
    big = tmp_path / "big.yaml"
    big.write_text("scenario: overlap-vs-kappa\nN: 15\n")
    assert main(["run", str(big), "--output-dir", str(tmp_path / "o")]) == 3


def test_io_exit_codes(small_config, tmp_path):
    assert main(["run", str(tmp_path / "missing.yaml")]) == 4
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["run", str(small_config), "--output-dir", str(blocker / "sub")]) == 4


def test_scenarios_listing(capsys):
    assert main(["scenarios"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in PRESETS)
    assert main(["scenarios", "--show", "coherence-vs-kappa"]) == 0
    assert "scenario: evolve" in capsys.readouterr().out
    assert main(["scenarios", "--show", "nope"]) == 2


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_are_valid(name):
    parse_config(PRESETS[name][1])
