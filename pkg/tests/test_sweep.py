import csv
import io
import json

import pytest

from coherent_qhe.atoms import chi_bounds, epsilon_e_bounds
from coherent_qhe.engine import single_bath_cooling, single_bath_heating
from coherent_qhe.steady_state import Regime, classify_regime, photon_number
from coherent_qhe.sweep import (
    Axis,
    ConfigError,
    SweepRecord,
    SweepSpec,
    Validity,
    evaluate_point,
    figure_preset,
    load_spec,
    records_from_json,
    render_csv,
    render_json,
    run_specs,
    run_sweep,
)


def test_presets_carry_figure_parameters():
    (a,) = figure_preset("fig3a")
    assert a.fixed == {"nbar": 0.5} and a.axes[0].values == (-0.01, -0.03, -0.05)
    (b,) = figure_preset("fig3b")
    assert b.fixed == {"nbar": 5.0} and b.axes[0].values == (0.2, 0.6, 1.0)
    ground, excited = figure_preset("fig4a")
    assert ground.shape == excited.shape == (1000,)
    assert ground.axes[0].values[0] == pytest.approx(-1 / 6) and excited.axes[0].values[-1] == pytest.approx(0.2)
    (c,) = figure_preset("fig4b")
    assert c.shape == (201, 201)
    with pytest.raises(ConfigError):
        figure_preset("fig9")


def test_fig3a_out_of_bounds_from_n15():
    records = run_specs(figure_preset("fig3a"))
    for r in records:
        if r.inputs["chi"] != -0.05:
            continue
        n = r.inputs["n_levels"]
        assert (r.validity is Validity.VALID) == (n <= 14)
        assert (r.inputs["chi"] in chi_bounds(n, 0.5)) == (n <= 14)


def test_single_cell_matches_direct_call():
    spec = SweepSpec("multi_ground", {"nbar": 5.0, "chi": 0.6}, (Axis("n_levels", (7,)),), ("eta_q",))
    (rec,) = run_sweep(spec)
    assert rec.observables["eta_q"] == pytest.approx(single_bath_cooling(0.6, 7, 5.0), rel=1e-14)
    spec = SweepSpec("multi_ground", {"nbar": 0.5, "chi": -0.03}, (Axis("n_levels", (4,)),), ("eta_q",))
    assert run_sweep(spec)[0].observables["eta_q"] == pytest.approx(single_bath_heating(-0.03, 4, 0.5), rel=1e-14)


def test_two_excited_validity_follows_bounds():
    ax = Axis.linspace("eps_e", -1.0, 1.0, 401)
    for r in run_sweep(SweepSpec("two_excited", {"nbar": 5.0}, (ax,))):
        e = r.inputs["eps_e"]
        if r.validity is Validity.VALID:
            assert e in epsilon_e_bounds(5.0)
        else:
            assert r.validity in (Validity.ZERO, Validity.DIVERGENT, Validity.UNPHYSICAL)


def test_regime_column_matches_classifier():
    (spec,) = figure_preset("fig4b", steps=41)
    for r in run_sweep(spec):
        eg, ee = r.inputs["eps_g"], r.inputs["eps_e"]
        if r.validity is Validity.VALID:
            assert r.observables["regime"] == classify_regime(eg, ee, 5.0).value
            assert r.observables["nbar_q"] == photon_number(eg, ee, 5.0)
        else:
            assert classify_regime(eg, ee, 5.0) is Regime.UNPHYSICAL or ee == -1.0


def test_invalid_records_have_no_observables():
    with pytest.raises(ValueError):
        SweepRecord({"nbar": 1.0}, Validity.DIVERGENT, "", {"nbar_q": 1.0})
    r = evaluate_point("four_level", {"nbar": 5.0, "eps_g": -1.0, "eps_e": 0.0}, ("nbar_q",))
    assert r.validity is Validity.UNPHYSICAL and not r.observables
    r = evaluate_point("four_level", {"nbar": 5.0, "eps_g": 2.0, "eps_e": 0.0}, ("nbar_q",))
    assert r.validity is Validity.OUT_OF_BOUNDS and r.detail.startswith("psd")


def test_empty_csv_is_header_only():
    assert render_csv([], ["nbar_q"]) == "series,validity,detail,nbar_q\n"


def test_csv_shape_and_empty_fields():
    (spec,) = figure_preset("fig3a")
    text = render_csv(run_sweep(spec), spec.observables)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["series", "n_levels", "chi", "nbar", "validity", "detail", "eta_q"]
    assert len(rows) == 3 * 29
    for row in rows:
        assert (row["eta_q"] == "") == (row["validity"] != "valid")
    assert "\r" not in text


def test_json_roundtrip():
    (spec,) = figure_preset("fig4b", steps=11)
    records = run_sweep(spec)
    text = render_json(records)
    assert records_from_json(text) == records
    first = json.loads(text)[0]
    assert list(first) == ["series", "inputs", "validity", "detail", "observables"]


def test_parallel_matches_serial():
    (spec,) = figure_preset("fig4b", steps=31)
    assert render_csv(run_sweep(spec, 1)) == render_csv(run_sweep(spec, 3))


INI = """
[sweep]
case = four_level
observables = regime, nbar_q
[fixed]
nbar = 5
[axis.eps_g]
min = -0.5
max = 0.5
steps = 5
[axis.eps_e]
values = -0.1, 0.0, 0.1
"""


def test_load_spec_text():
    spec = load_spec(INI, is_text=True)
    assert spec.shape == (5, 3)
    assert spec.observables == ("nbar_q", "regime")
    assert load_spec(INI, {"nbar": "2.5"}, is_text=True).fixed["nbar"] == 2.5


@pytest.mark.parametrize(
    "text, path",
    [
        ("[fixed]\nnbar=1\n", "sweep"),
        ("[sweep]\ncase=bogus\n[fixed]\nnbar=1\n[axis.eps_e]\nvalues=0\n", "sweep.case"),
        ("[sweep]\ncase=two_excited\n[fixed]\nnbar=abc\n[axis.eps_e]\nvalues=0\n", "fixed.nbar"),
        ("[sweep]\ncase=two_excited\n[fixed]\nnbar=1\n[axis.eps_e]\nmin=0\nmax=1\n", "axis.eps_e.steps"),
        ("[sweep]\ncase=two_excited\n[fixed]\nnbar=1\n[axis.eps_e]\nmin=0\nmax=1\nsteps=1\n", "axis.eps_e.steps"),
        ("[sweep]\ncase=two_excited\n[fixed]\nnbar=1\nchi=0.1\n[axis.eps_e]\nvalues=0\n", "fixed.chi"),
        ("[sweep]\ncase=two_excited\n[axis.eps_e]\nvalues=0\n", "fixed.nbar"),
        ("[sweep]\ncase=two_excited\n[fixed]\nnbar=1\n", "axis"),
        ("[sweep]\ncase=two_excited\n[fixed]\nnbar=1\n[grid]\nx=1\n", "grid"),
        ("[sweep]\ncase=two_excited\nobservables=heat\n[fixed]\nnbar=1\n[axis.eps_e]\nvalues=0\n", "sweep.observables"),
    ],
)
def test_config_errors_name_the_field(text, path):
    with pytest.raises(ConfigError) as err:
        load_spec(text, is_text=True)
    assert err.value.path == path
