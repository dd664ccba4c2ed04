import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coherent_qhe.atoms import FourLevelAtom, MultiGroundAtom, TwoExcitedAtom
from coherent_qhe.dynamics import birth_death_steady_state, rate_coefficients
from coherent_qhe.steady_state import (
    Regime,
    Tag,
    classify_regime,
    effective_temperature,
    photon_number,
    positivity_denominator,
    steady_photon_number,
    steady_state,
    temperature,
    temperature_ratio,
)
from coherent_qhe.units import temperature_from_mean_photon

nbars = st.floats(0.01, 50.0)


def test_classical_reduction():
    for nbar in (0.1, 1.0, 5.0, 123.0):
        assert photon_number(0.0, 0.0, nbar) == nbar
        assert temperature(0.0, 0.0, nbar).theta == temperature_from_mean_photon(nbar)


def test_case_one_example_against_oracle():
    atom = MultiGroundAtom.from_reference(2, 5.0, 0.5)
    oracle = birth_death_steady_state(rate_coefficients(atom), 1e-12).mean
    assert oracle == pytest.approx(1.25, rel=1e-9)
    assert steady_photon_number(atom) == pytest.approx(oracle, rel=1e-9)
    assert photon_number(0.5, 0.0, 5.0) == 1.25


def test_case_two_example_against_oracle():
    atom = TwoExcitedAtom.from_reference(5.0, 0.1)
    oracle = birth_death_steady_state(rate_coefficients(atom), 1e-12).mean
    assert oracle == pytest.approx(11.0, rel=1e-9)
    assert steady_photon_number(atom) == pytest.approx(11.0, rel=1e-12)


@given(nbars, st.floats(-0.9, 1.0))
def test_equal_coherences_cancel(nbar, eps):
    assert photon_number(eps, eps, nbar) == pytest.approx(nbar, rel=1e-13)
    assert temperature_ratio(eps, eps, nbar) == pytest.approx(1.0, rel=1e-12)


def test_temperature_halving():
    assert temperature_ratio(0.2, 0.0, 5.0) == pytest.approx(0.5, rel=1e-14)


def test_zero_and_divergent_tags():
    t = temperature(0.0, -1.0, 5.0)
    assert t.kind is Tag.ZERO and t.theta is None
    assert photon_number(0.3, -1.0, 5.0) == 0.0
    assert temperature(-1.0 / 6.0, 0.0, 5.0).kind is Tag.DIVERGENT
    assert photon_number(-1.0 / 6.0, 0.0, 5.0) is Tag.DIVERGENT
    assert temperature(0.0, 0.2, 5.0).kind is Tag.DIVERGENT
    assert temperature(-0.2, 0.0, 5.0).kind is Tag.UNPHYSICAL
    assert photon_number(0.0, 0.25, 5.0) is Tag.UNPHYSICAL
    # approaching the boundary from inside stays finite and grows
    prev = 0.0
    for k in range(1, 8):
        eg = -1.0 / 6.0 + 10.0**-k
        r = temperature_ratio(eg, 0.0, 5.0)
        assert r > prev
        prev = r


def test_regime_examples():
    assert classify_regime(0.3, 0.3, 5.0) is Regime.CANCELLATION
    assert positivity_denominator(-0.1, 0.15, 5.0) == pytest.approx(-0.35)
    assert classify_regime(-0.1, 0.15, 5.0) is Regime.UNPHYSICAL
    assert classify_regime(-0.05, 0.1, 5.0) is Regime.HEATING
    assert classify_regime(0.1, -0.05, 5.0) is Regime.COOLING


@settings(max_examples=300)
@given(nbars, st.floats(-0.99, 1.0))
def test_reduction_chain(nbar, eps):
    eg_lo = -1.0 / (nbar + 1.0)
    if eps > eg_lo * 0.999:
        four = FourLevelAtom.from_reference(nbar, eps, 0.0)
        two_ground = photon_number(eps, 0.0, nbar)
        assert steady_photon_number(four, nbar) == pytest.approx(two_ground, rel=1e-14)
        mg = MultiGroundAtom.from_reference(2, nbar, eps)
        assert steady_photon_number(mg, nbar) == pytest.approx(two_ground, rel=1e-14)
    if eps < min(1.0, 1.0 / nbar) * 0.999 and eps > -1.0:
        a = steady_photon_number(FourLevelAtom.from_reference(nbar, 0.0, eps), nbar)
        b = steady_photon_number(TwoExcitedAtom.from_reference(nbar, eps), nbar)
        assert a == pytest.approx(b, rel=1e-14)


@given(nbars, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_case_one_decreasing_in_eps_g(nbar, a, b):
    lo = -1.0 / (nbar + 1.0)
    x, y = sorted((a, b))
    if y - x < 1e-9:
        return
    ex, ey = lo + (1 - lo) * x + 1e-9, lo + (1 - lo) * y + 1e-9
    assert photon_number(ex, 0.0, nbar) > photon_number(ey, 0.0, nbar)


@given(nbars, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_case_two_increasing_in_eps_e(nbar, a, b):
    hi = min(1.0, 1.0 / nbar)
    x, y = sorted((a, b))
    if y - x < 1e-9:
        return
    ex, ey = -1.0 + (hi + 1.0) * x * 0.999, -1.0 + (hi + 1.0) * y * 0.999
    assert photon_number(0.0, ex, nbar) < photon_number(0.0, ey, nbar)


@settings(max_examples=300)
@given(nbars, st.floats(-1.0, 1.0), st.floats(-0.999, 1.0))
def test_temperature_consistent_with_photon_number(nbar, eg, ee):
    n_q = photon_number(eg, ee, nbar)
    t = temperature(eg, ee, nbar)
    if isinstance(n_q, Tag):
        assert t.kind is n_q
        return
    assert t.theta == pytest.approx(temperature_from_mean_photon(n_q), rel=1e-12)


def test_cancellation_many_points(rng):
    for x in rng.uniform(-0.99, 1.0, 1000):
        nbar = float(rng.uniform(0.05, 20.0))
        assert classify_regime(x, x, nbar) is Regime.CANCELLATION
        assert temperature_ratio(x, x, nbar) == pytest.approx(1.0, abs=1e-12)


@given(nbars)
def test_zero_temperature_boundary(nbar):
    assert photon_number(0.0, -1.0, nbar) == 0.0
    assert photon_number(0.5, -1.0, nbar) == 0.0
    assert effective_temperature(TwoExcitedAtom.from_reference(nbar, -1.0)).kind is Tag.ZERO


def test_steady_state_bundle():
    res = steady_state(FourLevelAtom.from_reference(2.0, 0.2, 0.1))
    assert res.nbar_q == pytest.approx(2.2 / 1.4, rel=1e-14)
    assert res.status is Tag.FINITE and res.regime is Regime.COOLING
    assert res.temperature.theta == pytest.approx(temperature_from_mean_photon(res.nbar_q), rel=1e-12)
    div = steady_state(TwoExcitedAtom.from_reference(5.0, 0.2))
    assert div.nbar_q is None and div.status is Tag.DIVERGENT
