import pytest

from spinbath.config import parse_config
from spinbath.errors import ConfigParseError, ConfigValidationError

MINIMAL = "scenario: evolve\nN: 9\nkappa: 1.0\ndelta: 3.0\nseed: 1\n"


def test_minimal_config_gets_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.model.gamma == 1.0 and cfg.model.eps_sb == 1e-3
    assert cfg.dt_sample == 0.1 and cfg.t_max == 300.0
    assert cfg.window == (200.0, 300.0)
    assert cfg.ensemble == 1 and cfg.points == (None,)


def test_kappa_out_of_range_names_field():
    with pytest.raises(ConfigValidationError) as err:
        parse_config(MINIMAL.replace("kappa: 1.0", "kappa: 1.5"))
    assert err.value.field == "kappa"


def test_unknown_key_is_rejected():
    with pytest.raises(ConfigValidationError) as err:
        parse_config(MINIMAL + "lamda: 0.3\n")
    assert err.value.field == "lamda"
    assert "lamda" in str(err.value)


def test_parse_error_carries_line():
    with pytest.raises(ConfigParseError) as err:
        parse_config("scenario: evolve\nN: 9\nsweep_values: [1,\n  x: :\n")
    assert err.value.line == 4


@pytest.mark.parametrize("text,field", [
    ("scenario: nope\n", "scenario"),
    ("scenario: evolve\nensemble: 0\n", "ensemble"),
    ("scenario: evolve\nsweep_axis: lambda\nsweep_values: [1]\n", "sweep_axis"),
    ("scenario: spacing\nsector_mode: parity\n", "sector_mode"),
])
def test_invariant_violations(text, field):
    with pytest.raises(ConfigValidationError) as err:
        parse_config(text)
    assert err.value.field == field


def test_sweep_range_and_shorthand():
    cfg = parse_config("scenario: overlap-vs-kappa\nsweep_values: {start: 0, stop: 1, num: 5}\n")
    assert cfg.sweep_axis == "kappa"
    assert cfg.points == pytest.approx((0, 0.25, 0.5, 0.75, 1.0))
    cfg = parse_config("scenario: evolve\nsweep: {delta: [1, 2]}\n")
    assert cfg.sweep_axis == "delta" and cfg.points == (1.0, 2.0)


def test_config_hash_tracks_source():
    a, b = parse_config(MINIMAL), parse_config(MINIMAL + "ensemble: 2\n")
    assert a.config_hash() == parse_config(MINIMAL).config_hash() != b.config_hash()
