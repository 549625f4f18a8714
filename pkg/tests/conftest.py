# tests/conftest.py
import pytest

from tfqkd import Stats
from tfqkd.PulseModel import DimensionlessParams, PhysicalConfig

VALID_CONFIG = {
    "t0": 0.0,
    "dt_sep": 1e-9,
    "sigma_t": 1e-9,
    "sigma_T": 2e-9,
    "nu0": 1.93e14,
    "dnu_sep": 1e9,
    "sigma_nu": 1e9,
    "sigma_omega": 2e9,
    "n_symbols": 2,
}


def _config_text(**overrides):
    values = {**VALID_CONFIG, **overrides}
    return "".join(f"{k} = {v!r}\n" for k, v in values.items() if v is not None)


@pytest.fixture
def binomial_close():
    return Stats.binomial_close


@pytest.fixture
def config_text():
    """Render a config file from VALID_CONFIG with overrides; ``None`` drops a key."""
    return _config_text


@pytest.fixture
def operating_point():
    """x = 1.65, y = 0.05, z = 2.5: fidelity above 99% with thin slices."""
    return DimensionlessParams(1.65, 0.05, 2.5)


@pytest.fixture
def valid_config():
    return PhysicalConfig(**VALID_CONFIG)


@pytest.fixture
def write_config(tmp_path):
    def _write(text, name="pulse.cfg"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
