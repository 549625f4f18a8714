# tests/test_config_file.py
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfqkd.ConfigFile import load_physical_config, number, parse_physical_config
from tfqkd.Errors import ConfigFileError
from tfqkd.Prim import eof, run_parser
from tfqkd.PulseModel import to_dimensionless


def test_parses_valid_file(config_text, valid_config):
    assert parse_physical_config(config_text()) == valid_config


def test_comments_blank_lines_and_missing_final_newline(config_text, valid_config):
    text = "# pulse set\n\n" + config_text().replace("sigma_t = ", "  sigma_t\t=   ") + "  # end"
    assert parse_physical_config(text) == valid_config


def test_trailing_comment_on_assignment(config_text):
    text = config_text(n_symbols=None) + "n_symbols = 4   # quNdit\n"
    assert parse_physical_config(text).n_symbols == 4


def test_nonpositive_values_parse(config_text):
    cfg = parse_physical_config(config_text(sigma_T=-2.0))
    assert cfg.sigma_T == -2.0


@pytest.mark.parametrize(
    "literal, expected",
    [
        ("1", 1.0),
        ("-2.5", -2.5),
        ("+.5", 0.5),
        ("3.", 3.0),
        ("1e-9", 1e-9),
        ("4.6669E-9", 4.6669e-9),
    ],
)
def test_number_literals(literal, expected):
    value, err = run_parser(number < eof(), literal)
    assert err is None
    assert value == expected


@settings(deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_prop_number_reads_repr(v):
    value, err = run_parser(number < eof(), repr(v))
    assert err is None
    assert value == v


def test_syntax_error_points_at_value(config_text):
    text = config_text(sigma_T=None) + "sigma_T = fast\n"
    with pytest.raises(ConfigFileError) as info:
        parse_physical_config(text, "pulse.cfg")
    (diag,) = info.value.diagnostics
    assert "line 9, column 11" in diag
    assert "expecting number" in diag
    assert diag.startswith('"pulse.cfg" (line 9, column 11)')
    assert str(info.value) == diag


def test_incomplete_exponent_is_reported(config_text):
    with pytest.raises(ConfigFileError, match="exponent digit"):
        parse_physical_config(config_text(n_symbols=None) + "n_symbols = 2e\n")


def test_trailing_garbage_is_reported(config_text):
    with pytest.raises(ConfigFileError, match="unexpected 'n'"):
        parse_physical_config(config_text(n_symbols=None) + "n_symbols = 2 ns\n")


def test_key_problems_are_collected(config_text):
    text = config_text(nu0=None) + "t0 = 1\nwidth = 3\n"
    with pytest.raises(ConfigFileError) as info:
        parse_physical_config(text)
    diags = info.value.diagnostics
    assert len(diags) == 3
    assert "duplicate key 't0' (first set on line 1)" in diags[0]
    assert "line 9, column 1" in diags[0]
    assert "unknown key 'width'" in diags[1]
    assert diags[2] == '"<string>": missing keys: nu0'


def test_overflowing_literal_is_rejected(config_text):
    with pytest.raises(ConfigFileError, match="number out of range") as info:
        parse_physical_config(config_text(nu0=None) + "nu0 = 1e999\n", "pulse.cfg")
    assert '"pulse.cfg" (line 9' in info.value.diagnostics[0]


def test_non_integral_symbol_count(config_text):
    with pytest.raises(ConfigFileError, match="n_symbols must be an integer"):
        parse_physical_config(config_text(n_symbols=2.5))


def test_integral_float_symbol_count(config_text):
    assert parse_physical_config(config_text(n_symbols=3.0)).n_symbols == 3


def test_load_from_disk(write_config, config_text, valid_config):
    assert load_physical_config(write_config(config_text())) == valid_config


def test_unreadable_file(tmp_path):
    missing = tmp_path / "absent.cfg"
    with pytest.raises(ConfigFileError) as info:
        load_physical_config(missing)
    assert info.value.source == str(missing)
    assert isinstance(info.value.cause, OSError)
    (diag,) = info.value.diagnostics
    assert diag.startswith(f'"{missing}": cannot read file')


def test_operating_point_file_reduces(write_config, config_text):
    text = config_text(dt_sep=4.6669e-9, sigma_T=2.5e-9)
    cfg = load_physical_config(write_config(text))
    p = to_dimensionless(cfg, 0.070711e-9)
    assert math.isclose(p.x, 1.65, abs_tol=5e-5)
    assert math.isclose(p.y, 0.05, abs_tol=5e-6)
    assert p.z == pytest.approx(2.5)
