import math

import pytest
from hypothesis import given, settings, strategies as st

from coherent_qhe.units import (
    DomainError,
    ZERO_TEMPERATURE,
    mean_photon_from_temperature,
    radiation_pressure,
    temperature_from_mean_photon,
)

from conftest import bisect

# double precision cannot hold exp(-1/theta) below theta ~ 1/708
THETA_MIN_REPRESENTABLE = 1.0 / 700.0


def test_zero_temperature_limit():
    assert mean_photon_from_temperature(1e-3) == 0.0
    assert mean_photon_from_temperature(0.01) < 1e-40


@pytest.mark.parametrize("nbar", [1.0, 0.5])
def test_temperature_matches_bisection_inverse(nbar):
    oracle = bisect(lambda th: mean_photon_from_temperature(th) - nbar, 0.05, 50.0)
    assert temperature_from_mean_photon(nbar) == pytest.approx(oracle, rel=1e-12)


def test_frozen_values():
    # 1/ln 2 and 1/ln 3 from mpmath at 40 digits
    assert temperature_from_mean_photon(1.0) == pytest.approx(1.4426950408889634, rel=1e-15)
    assert temperature_from_mean_photon(0.5) == pytest.approx(0.91023922662683739, rel=1e-15)


def test_empty_mode_is_zero_temperature_tag():
    assert temperature_from_mean_photon(0.0) == ZERO_TEMPERATURE


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_temperature_domain(bad):
    with pytest.raises(DomainError):
        mean_photon_from_temperature(bad)


@pytest.mark.parametrize("bad", [-1e-9, math.inf, math.nan])
def test_nbar_domain(bad):
    with pytest.raises(DomainError):
        temperature_from_mean_photon(bad)


def test_high_temperature_limit():
    theta = 1e4
    assert abs(mean_photon_from_temperature(theta) - (theta - 0.5)) / theta < 1e-4
    assert temperature_from_mean_photon(1e8) / 1e8 == pytest.approx(1.0, rel=1e-7)


@settings(max_examples=500)
@given(st.floats(min_value=THETA_MIN_REPRESENTABLE, max_value=1e3))
def test_roundtrip(theta):
    back = temperature_from_mean_photon(mean_photon_from_temperature(theta))
    assert back == pytest.approx(theta, rel=1e-12)


@given(st.floats(min_value=1e-2, max_value=1e3), st.floats(min_value=1e-2, max_value=1e3))
def test_monotone(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    assert mean_photon_from_temperature(lo) < mean_photon_from_temperature(hi)
    n_lo, n_hi = mean_photon_from_temperature(lo), mean_photon_from_temperature(hi)
    assert temperature_from_mean_photon(n_lo) <= temperature_from_mean_photon(n_hi)


def test_radiation_pressure():
    assert radiation_pressure(0.0, 1.0) == 0.0
    assert radiation_pressure(5.0, 1.0, 1.0) == 5.0
    assert radiation_pressure(5.0, 2.0) == pytest.approx(0.5 * radiation_pressure(5.0, 1.0))
    p = radiation_pressure(3.7, 2.5, 1.3)
    assert p * 2.5 == pytest.approx(1.3 * 3.7, rel=1e-15)
    with pytest.raises(DomainError):
        radiation_pressure(1.0, 0.0)
