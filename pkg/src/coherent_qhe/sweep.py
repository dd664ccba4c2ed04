"""Parameter sweeps over the coherence-engine observables.

A :class:`SweepSpec` fixes a configuration (``case``), some parameters, and
one or two swept axes. :func:`run_sweep` enumerates the grid in row-major
order (first axis outermost) and returns one :class:`SweepRecord` per cell;
invalid cells are kept with their validity tag.

Parameters understood by every case:

``nbar``        reference (hot-bath) mean photon number
``nbar_cold``   cold-bath mean photon number for ``eta_q`` (defaults to ``nbar``)
``n_levels``    ground-level count ``N`` (``multi_ground`` only, default 2)
``chi``         relative ground coherence (``multi_ground``)
``eps_g``       normalized ground coherence (``multi_ground``, ``four_level``)
``eps_e``       normalized excited coherence (``two_excited``, ``four_level``)
"""
from __future__ import annotations

import configparser
import csv
import enum
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from . import engine
from .atoms import chi_bounds
from .steady_state import Tag, classify_regime, photon_number, temperature
from .units import DomainError, temperature_from_mean_photon

__all__ = [
    "CASES",
    "PARAMETERS",
    "OBSERVABLES",
    "PRESETS",
    "ConfigError",
    "Validity",
    "Axis",
    "SweepSpec",
    "SweepRecord",
    "evaluate_point",
    "run_sweep",
    "run_specs",
    "figure_preset",
    "columns_for",
    "emit",
    "render_csv",
    "render_json",
    "records_from_json",
    "load_spec",
]

CASES = ("multi_ground", "two_excited", "four_level")
#: Canonical column order of input parameters.
PARAMETERS = ("n_levels", "chi", "eps_g", "eps_e", "nbar", "nbar_cold")
#: Canonical column order of observables.
OBSERVABLES = ("nbar_q", "t_ratio", "eta_q", "regime")
PRESETS = ("fig3a", "fig3b", "fig4a", "fig4b")

_ALLOWED = {
    "multi_ground": {"nbar", "nbar_cold", "n_levels", "chi", "eps_g"},
    "two_excited": {"nbar", "nbar_cold", "eps_e"},
    "four_level": {"nbar", "nbar_cold", "eps_g", "eps_e"},
}


class ConfigError(ValueError):
    """Malformed sweep specification; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class Validity(str, enum.Enum):
    VALID = "valid"
    OUT_OF_BOUNDS = "out_of_bounds"
    DIVERGENT = "divergent"
    ZERO = "zero"
    UNPHYSICAL = "unphysical"


_TAG_VALIDITY = {
    Tag.DIVERGENT: Validity.DIVERGENT,
    Tag.ZERO: Validity.ZERO,
    Tag.UNPHYSICAL: Validity.UNPHYSICAL,
}


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple

    @classmethod
    def linspace(cls, name: str, lo: float, hi: float, steps: int, endpoint: bool = True) -> "Axis":
        if steps < 2:
            raise ConfigError(f"axis.{name}.steps", f"must be >= 2, got {steps!r}")
        if not lo < hi:
            raise ConfigError(f"axis.{name}", f"need min < max, got {lo!r}, {hi!r}")
        grid = np.linspace(lo, hi, steps, endpoint=endpoint)
        return cls(name, tuple(float(v) for v in grid))

    @classmethod
    def integers(cls, name: str, lo: int, hi: int) -> "Axis":
        return cls(name, tuple(range(int(lo), int(hi) + 1)))


@dataclass(frozen=True)
class SweepSpec:
    case: str
    fixed: Mapping[str, float]
    axes: tuple
    observables: tuple = ("nbar_q", "t_ratio", "regime")
    series: str = ""

    def __post_init__(self):
        if self.case not in CASES:
            raise ConfigError("sweep.case", f"unknown case {self.case!r}; choose from {', '.join(CASES)}")
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError("axis", f"need one or two swept axes, got {len(self.axes)}")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError("axis", f"duplicate axis names {names}")
        for a in self.axes:
            if not a.values:
                raise ConfigError(f"axis.{a.name}", "no values")
            if a.name in self.fixed:
                raise ConfigError(f"axis.{a.name}", "also given as a fixed parameter")
        allowed = _ALLOWED[self.case]
        for name in list(self.fixed) + names:
            section = "axis" if name in names else "fixed"
            if name not in allowed:
                raise ConfigError(
                    f"{section}.{name}", f"not a parameter of case {self.case!r} (allowed: {sorted(allowed)})"
                )
        given = set(self.fixed) | set(names)
        if "nbar" not in given:
            raise ConfigError("fixed.nbar", "required")
        if self.case == "multi_ground" and ("chi" in given) == ("eps_g" in given):
            raise ConfigError("fixed.chi", "multi_ground needs exactly one of chi or eps_g")
        if not self.observables:
            raise ConfigError("sweep.observables", "empty")
        for obs in self.observables:
            if obs not in OBSERVABLES:
                raise ConfigError("sweep.observables", f"unknown observable {obs!r}; choose from {OBSERVABLES}")
        object.__setattr__(self, "fixed", dict(self.fixed))
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "observables", tuple(o for o in OBSERVABLES if o in self.observables))

    @property
    def shape(self) -> tuple:
        return tuple(len(a.values) for a in self.axes)

    def points(self):
        """Grid inputs in row-major order."""
        names = [a.name for a in self.axes]
        for combo in product(*(a.values for a in self.axes)):
            params = dict(self.fixed)
            params.update(zip(names, combo))
            yield params


@dataclass(frozen=True)
class SweepRecord:
    inputs: dict
    validity: Validity
    detail: str = ""
    observables: dict = field(default_factory=dict)
    series: str = ""

    def __post_init__(self):
        if (self.validity is Validity.VALID) != bool(self.observables):
            raise ValueError("observables must be present exactly for valid records")


def _psd_and_bounds(case: str, params: Mapping[str, Any]) -> tuple[float, float, str]:
    """Resolve ``(eps_g, eps_e)`` and return an out-of-bounds message if any."""
    nbar = params["nbar"]
    if not (nbar > 0.0 and math.isfinite(nbar)):
        raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
    if case == "multi_ground":
        n = params.get("n_levels", 2)
        if int(n) != n or n < 1:
            return 0.0, 0.0, f"n_levels must be a positive integer, got {n!r}"
        if "chi" in params:
            chi = params["chi"]
            if n == 1:
                return 0.0, 0.0, ""
            if not -1.0 / (n - 1) <= chi <= 1.0:
                return 0.0, 0.0, f"psd: chi={chi!r} outside [-1/(N-1), 1] = [{-1.0 / (n - 1):.17g}, 1]"
            bounds = chi_bounds(n, nbar)
            if chi not in bounds:
                return 0.0, 0.0, f"chi_bounds: chi={chi!r} outside {bounds.describe()}"
            return chi * (n - 1), 0.0, ""
        eps_g = params["eps_g"]
        if not -1.0 <= eps_g <= n - 1:
            return 0.0, 0.0, f"psd: eps_g={eps_g!r} outside [-1, N-1] = [-1, {n - 1}]"
        return eps_g, 0.0, ""
    if case == "two_excited":
        eps_e = params["eps_e"]
        if abs(eps_e) > 1.0:
            return 0.0, 0.0, f"psd: |eps_e|={abs(eps_e)!r} exceeds 1"
        return 0.0, eps_e, ""
    eps_g, eps_e = params["eps_g"], params["eps_e"]
    if abs(eps_g) > 1.0 or abs(eps_e) > 1.0:
        return 0.0, 0.0, f"psd: need |eps_g| <= 1 and |eps_e| <= 1, got {eps_g!r}, {eps_e!r}"
    return eps_g, eps_e, ""


def _efficiency(case: str, eps_g: float, eps_e: float, nbar_c: float, nbar_h: float) -> float:
    if case == "multi_ground":
        if eps_g < 0.0:
            return engine.quantum_efficiency_heating(eps_g, nbar_c, nbar_h)
        return engine.quantum_efficiency_cooling(eps_g, nbar_c, nbar_h)
    return engine.coherent_efficiency(eps_g, eps_e, nbar_c, nbar_h)


def evaluate_point(case: str, params: Mapping[str, Any], observables: Sequence[str], series: str = "") -> SweepRecord:
    """Evaluate one grid cell; never raises for out-of-domain physics."""
    inputs = dict(params)
    try:
        eps_g, eps_e, why = _psd_and_bounds(case, params)
    except DomainError as exc:
        return SweepRecord(inputs, Validity.OUT_OF_BOUNDS, str(exc), series=series)
    if why:
        return SweepRecord(inputs, Validity.OUT_OF_BOUNDS, why, series=series)
    nbar = params["nbar"]
    t_q = temperature(eps_g, eps_e, nbar)
    if not t_q.is_finite:
        return SweepRecord(inputs, _TAG_VALIDITY[t_q.kind], t_q.reason, series=series)
    obs: dict = {}
    for name in observables:
        if name == "nbar_q":
            obs[name] = photon_number(eps_g, eps_e, nbar)
        elif name == "t_ratio":
            obs[name] = t_q.theta / temperature_from_mean_photon(nbar)
        elif name == "regime":
            obs[name] = classify_regime(eps_g, eps_e, nbar).value
        elif name == "eta_q":
            nbar_c = params.get("nbar_cold", nbar)
            try:
                obs[name] = _efficiency(case, eps_g, eps_e, nbar_c, nbar)
            except DomainError as exc:
                return SweepRecord(inputs, Validity.OUT_OF_BOUNDS, str(exc), series=series)
    return SweepRecord(inputs, Validity.VALID, "", obs, series=series)


def _evaluate_packed(args):
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec, workers: Optional[int] = None) -> list:
    """Evaluate every grid cell of ``spec`` in row-major order.

    With ``workers > 1`` cells are farmed out to a process pool; the result
    list is identical to the serial one.
    """
    jobs = [(spec.case, p, spec.observables, spec.series) for p in spec.points()]
    if workers is None or workers <= 1 or len(jobs) < 2:
        return [_evaluate_packed(j) for j in jobs]
    chunk = max(1, len(jobs) // (8 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_packed, jobs, chunksize=chunk))


def run_specs(specs: Iterable[SweepSpec], workers: Optional[int] = None) -> list:
    records: list = []
    for spec in specs:
        records.extend(run_sweep(spec, workers))
    return records


def figure_preset(name: str, steps: Optional[int] = None) -> tuple:
    """Sweep specs regenerating the data behind a published figure.

    ``fig3a``  single-bath heating, ``nbar_eq = 0.5``, chi in {-0.01, -0.03, -0.05}, N = 2..30
    ``fig3b``  single-bath cooling, ``nbar_eq = 5``, chi in {0.2, 0.6, 1}, N = 1..30
    ``fig4a``  ``T_Q/T_bath`` at ``nbar = 5`` along eps_g (two ground levels,
               eps_g in [-1/(nbar+1), 1]) and along eps_e (in [-1, 1/nbar]);
               both ends are included so the divergent and zero-temperature
               boundaries appear as tagged rows. Default 1000 points each.
    ``fig4b``  four-level map at ``nbar = 5``: eps_g in [-1, 1] (201 points)
               by eps_e in [-1, 0.2) (201 points, upper end excluded)
    """
    if name == "fig3a":
        return (
            SweepSpec(
                "multi_ground",
                {"nbar": 0.5},
                (Axis("chi", (-0.01, -0.03, -0.05)), Axis.integers("n_levels", 2, 30)),
                ("eta_q",),
                series="fig3a",
            ),
        )
    if name == "fig3b":
        return (
            SweepSpec(
                "multi_ground",
                {"nbar": 5.0},
                (Axis("chi", (0.2, 0.6, 1.0)), Axis.integers("n_levels", 1, 30)),
                ("eta_q",),
                series="fig3b",
            ),
        )
    if name == "fig4a":
        n = steps or 1000
        nbar = 5.0
        return (
            SweepSpec(
                "multi_ground",
                {"nbar": nbar, "n_levels": 2},
                (Axis.linspace("eps_g", -1.0 / (nbar + 1.0), 1.0, n),),
                ("nbar_q", "t_ratio", "regime"),
                series="fig4a-ground",
            ),
            SweepSpec(
                "two_excited",
                {"nbar": nbar},
                (Axis.linspace("eps_e", -1.0, 1.0 / nbar, n),),
                ("nbar_q", "t_ratio", "regime"),
                series="fig4a-excited",
            ),
        )
    if name == "fig4b":
        n = steps or 201
        return (
            SweepSpec(
                "four_level",
                {"nbar": 5.0},
                (
                    Axis.linspace("eps_g", -1.0, 1.0, n),
                    Axis.linspace("eps_e", -1.0, 0.2, n, endpoint=False),
                ),
                ("nbar_q", "t_ratio", "regime"),
                series="fig4b",
            ),
        )
    raise ConfigError("figure", f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


# ---------------------------------------------------------------------------
# output

def columns_for(records: Sequence[SweepRecord], observables: Optional[Sequence[str]] = None) -> list:
    """Fixed column order: series, inputs, validity, detail, observables."""
    present = set()
    seen_obs = set()
    for r in records:
        present.update(r.inputs)
        seen_obs.update(r.observables)
    if observables is None:
        observables = [o for o in OBSERVABLES if o in seen_obs]
    else:
        observables = [o for o in OBSERVABLES if o in observables]
    return ["series", *(p for p in PARAMETERS if p in present), "validity", "detail", *observables]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render_csv(records: Sequence[SweepRecord], observables: Optional[Sequence[str]] = None) -> str:
    cols = columns_for(records, observables)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in records:
        row = []
        for c in cols:
            if c == "series":
                row.append(r.series)
            elif c == "validity":
                row.append(r.validity.value)
            elif c == "detail":
                row.append(r.detail)
            elif c in r.inputs:
                row.append(_fmt(r.inputs[c]))
            else:
                row.append(_fmt(r.observables.get(c)))
        writer.writerow(row)
    return buf.getvalue()


def _plain(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def render_json(records: Sequence[SweepRecord]) -> str:
    rows = []
    for r in records:
        rows.append(
            {
                "series": r.series,
                "inputs": {k: _plain(r.inputs[k]) for k in PARAMETERS if k in r.inputs},
                "validity": r.validity.value,
                "detail": r.detail,
                "observables": {k: _plain(r.observables[k]) for k in OBSERVABLES if k in r.observables},
            }
        )
    return json.dumps(rows, indent=1, allow_nan=False) + "\n"


def records_from_json(text: str) -> list:
    return [
        SweepRecord(
            dict(row["inputs"]),
            Validity(row["validity"]),
            row["detail"],
            dict(row["observables"]),
            row["series"],
        )
        for row in json.loads(text)
    ]


def emit(records: Sequence[SweepRecord], fmt: str = "csv", destination=None,
         observables: Optional[Sequence[str]] = None) -> None:
    """Write records as CSV or JSON to a path, or to stdout when ``destination`` is None or ``"-"``."""
    if fmt == "csv":
        text = render_csv(records, observables)
    elif fmt == "json":
        text = render_json(records)
    else:
        raise ConfigError("format", f"unknown format {fmt!r}; choose csv or json")
    if destination is None or destination == "-":
        sys.stdout.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# config files

def _number(path: str, raw: str):
    raw = raw.strip()
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(path, f"not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(path, f"must be finite, got {raw!r}")
    return value


def _as_param(name: str, value):
    if name == "n_levels":
        if int(value) != value:
            raise ConfigError(f"fixed.{name}", f"must be an integer, got {value!r}")
        return int(value)
    return float(value)


def load_spec(path_or_text: str, overrides: Optional[Mapping[str, str]] = None, is_text: bool = False) -> SweepSpec:
    """Read a sweep spec from an INI file.

    Sections: ``[sweep]`` (``case``, ``observables``, optional ``series``),
    ``[fixed]`` (parameter = value), and one ``[axis.<name>]`` per swept
    parameter with either ``min``/``max``/``steps`` (optional ``endpoint``)
    or a comma-separated ``values`` list. Axis order follows the file.
    ``overrides`` replace ``[fixed]`` entries (``name=value`` from the CLI).
    """
    cp = configparser.ConfigParser()
    try:
        if is_text:
            cp.read_string(path_or_text)
        else:
            with open(path_or_text, encoding="utf-8") as fh:
                cp.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError("file", str(exc)) from None
    if not cp.has_section("sweep"):
        raise ConfigError("sweep", "missing [sweep] section")
    sw = cp["sweep"]
    if "case" not in sw:
        raise ConfigError("sweep.case", "required")
    obs = tuple(o.strip() for o in sw.get("observables", "nbar_q, t_ratio, regime").split(",") if o.strip())
    fixed = {}
    if cp.has_section("fixed"):
        for k, v in cp["fixed"].items():
            fixed[k] = _as_param(k, _number(f"fixed.{k}", v))
    axes = []
    for sect in cp.sections():
        if sect in ("sweep", "fixed"):
            continue
        if not sect.startswith("axis."):
            raise ConfigError(sect, "unknown section")
        name = sect[len("axis."):]
        s = cp[sect]
        if "values" in s:
            vals = tuple(_as_param(name, _number(f"{sect}.values", x)) for x in s["values"].split(",") if x.strip())
            axes.append(Axis(name, vals))
        else:
            for key in ("min", "max", "steps"):
                if key not in s:
                    raise ConfigError(f"{sect}.{key}", "required (or give values)")
            steps = _number(f"{sect}.steps", s["steps"])
            if not isinstance(steps, int):
                raise ConfigError(f"{sect}.steps", f"must be an integer, got {steps!r}")
            try:
                endpoint = s.getboolean("endpoint", fallback=True)
            except ValueError:
                raise ConfigError(f"{sect}.endpoint", "must be a boolean") from None
            lo = _number(f"{sect}.min", s["min"])
            hi = _number(f"{sect}.max", s["max"])
            if name == "n_levels":
                axes.append(Axis.integers(name, lo, hi))
            else:
                axes.append(Axis.linspace(name, float(lo), float(hi), steps, endpoint))
    for k, v in (overrides or {}).items():
        fixed[k] = _as_param(k, _number(f"fixed.{k}", v))
    return SweepSpec(sw["case"].strip(), fixed, tuple(axes), obs, sw.get("series", "").strip())
