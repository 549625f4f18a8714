# tests/test_pulsemodel.py
import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfqkd.Errors import DomainError
from tfqkd.PulseModel import (
    BinGrid,
    DimensionlessParams,
    PhysicalConfig,
    Severity,
    bin_grid,
    to_dimensionless,
    validate,
)
from tfqkd.SpecFun import Interval

SQRT2 = math.sqrt(2.0)


def physical(**overrides):
    base = dict(
        t0=0.0,
        dt_sep=1e-9,
        sigma_t=1e-9,
        sigma_T=2e-9,
        nu0=1.93e14,
        dnu_sep=1e9,
        sigma_nu=1e9,
        sigma_omega=2e9,
        n_symbols=2,
    )
    base.update(overrides)
    return PhysicalConfig(**base)


# --- to_dimensionless ---


def test_unit_values():
    cfg = physical(dt_sep=2 * SQRT2, sigma_t=1.0, sigma_T=2.5)
    p = to_dimensionless(cfg, SQRT2)
    assert p.x == pytest.approx(1.0, abs=1e-15)
    assert p.y == pytest.approx(1.0, abs=1e-15)
    assert p.z == 2.5


def test_operating_point_in_nanoseconds():
    cfg = physical(dt_sep=4.6669e-9, sigma_t=1e-9, sigma_T=2.5e-9)
    p = to_dimensionless(cfg, 0.070711e-9)
    assert round(p.x, 3) == 1.650
    assert round(p.y, 3) == 0.050
    assert p.z == pytest.approx(2.5)


@given(
    st.floats(min_value=0.1, max_value=10.0),
    st.floats(min_value=0.1, max_value=10.0),
    st.floats(min_value=0.1, max_value=10.0),
    st.floats(min_value=0.01, max_value=10.0),
    st.integers(min_value=-20, max_value=20),
)
def test_prop_scale_invariance(dt, sigma_t, sigma_T, slice_hw, k):
    c = 2.0**k
    base = to_dimensionless(physical(dt_sep=dt, sigma_t=sigma_t, sigma_T=sigma_T), slice_hw)
    scaled_cfg = physical(dt_sep=dt * c, sigma_t=sigma_t * c, sigma_T=sigma_T * c)
    scaled = to_dimensionless(scaled_cfg, slice_hw * c)
    assert (scaled.x, scaled.y, scaled.z) == (base.x, base.y, base.z)


@pytest.mark.parametrize("field", ["dt_sep", "sigma_t", "sigma_T"])
def test_to_dimensionless_rejects_nonpositive(field):
    with pytest.raises(DomainError, match=field):
        to_dimensionless(physical(**{field: 0.0}), 1e-10)


def test_to_dimensionless_rejects_nonpositive_slice():
    with pytest.raises(DomainError, match="slice_halfwidth"):
        to_dimensionless(physical(), -1.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(x=0.0, y=1, z=1),
        dict(x=1, y=-1, z=1),
        dict(x=1, y=1, z=math.inf),
        dict(x=1, y=1, z=1, n_symbols=1),
    ],
)
def test_dimensionless_params_domain(kwargs):
    with pytest.raises(DomainError):
        DimensionlessParams(**kwargs)


# --- bin_grid ---


def test_binary_grid():
    grid = bin_grid(DimensionlessParams(1.0, 0.1, 2.0))
    assert grid.centers == pytest.approx((0.0, 2.8284271))
    assert grid.midpoints == pytest.approx((1.4142136,))


def test_ternary_grid():
    grid = bin_grid(DimensionlessParams(1.0, 0.1, 2.0, 3))
    assert grid.centers == pytest.approx((0.0, 2.8284271, 5.6568542))
    assert grid.midpoint == pytest.approx(2.8284271)


def test_operating_point_threshold():
    grid = bin_grid(DimensionlessParams(1.65, 0.05, 2.5))
    assert grid.midpoints[0] == pytest.approx(2.3335, abs=5e-5)


@given(st.floats(min_value=0.01, max_value=10.0), st.integers(min_value=2, max_value=9))
def test_prop_grid_is_arithmetic(x, n):
    grid = bin_grid(DimensionlessParams(x, 0.1, 1.0, n))
    gaps = np.diff(grid.centers)
    assert grid.n == n
    assert grid.centers[0] == 0.0
    assert np.allclose(gaps, 2 * SQRT2 * x, rtol=1e-12)
    for i, m in enumerate(grid.midpoints):
        assert m == (grid.centers[i] + grid.centers[i + 1]) / 2


def test_decode_nearest_bin_with_ties_low():
    grid = BinGrid((0.0, 2.0, 4.0))
    values = np.array([-5.0, 0.9, 1.0, 1.0000001, 2.9, 3.0, 3.1, 100.0])
    assert grid.decode(values).tolist() == [0, 0, 0, 1, 1, 1, 2, 2]


def test_cells_tile_the_line():
    grid = BinGrid((0.0, 2.0, 4.0))
    assert grid.cell(0) == Interval.below(1.0)
    assert grid.cell(1) == Interval(1.0, 3.0)
    assert grid.cell(2) == Interval.above(3.0)
    with pytest.raises(DomainError):
        grid.cell(3)


def test_slice_window_is_clipped_to_cell():
    grid = bin_grid(DimensionlessParams(1.0, 2.0, 1.0))
    thin = grid.slice_window(0, 0.5)
    assert (thin.lo, thin.hi) == pytest.approx((-SQRT2 / 2, SQRT2 / 2))
    wide = grid.slice_window(0, 2.0)
    assert wide.lo == pytest.approx(-2 * SQRT2)
    assert wide.hi == pytest.approx(SQRT2)


# --- validate ---


def test_valid_config_has_no_findings():
    assert validate(physical()) == []


def test_separation_wider_than_wrong_basis_pulse_warns():
    findings = validate(physical(dt_sep=3e-9, sigma_T=2e-9))
    assert [(f.severity, f.code) for f in findings] == [
        (Severity.WARNING, "separation-exceeds-width")
    ]


def test_uncertainty_violation_is_an_error():
    findings = validate(physical(sigma_T=2e-9, sigma_nu=0.4e9))
    assert [(f.severity, f.code) for f in findings] == [(Severity.ERROR, "uncertainty")]
    assert "0.8" in findings[0].message


def test_operating_point_only_warns():
    findings = validate(physical(dt_sep=4.6669e-9, sigma_T=2.5e-9))
    assert [f.code for f in findings] == ["separation-exceeds-width"]
    assert findings[0].severity is Severity.WARNING
    assert "constraint dt_sep <= sigma_T" in findings[0].message


def test_qundit_span_warning():
    findings = validate(physical(dt_sep=1e-9, sigma_T=2.5e-9, n_symbols=4))
    assert [f.code for f in findings] == ["span-exceeds-width"]


def test_errors_come_before_warnings():
    findings = validate(physical(dt_sep=3e-9, sigma_T=2e-9, sigma_nu=-1.0, n_symbols=1))
    severities = [f.severity for f in findings]
    assert severities == sorted(severities, key=lambda s: s is Severity.WARNING)
    codes = {f.code for f in findings}
    assert {"nonpositive", "too-few-symbols", "separation-exceeds-width"} <= codes


def test_non_finite_origin():
    findings = validate(physical(t0=math.nan))
    assert [f.code for f in findings] == ["not-finite"]


def test_validate_is_pure():
    cfg = physical(dt_sep=3e-9, sigma_T=2e-9)
    snapshot = dataclasses.replace(cfg)
    assert validate(cfg) == validate(cfg)
    assert cfg == snapshot
