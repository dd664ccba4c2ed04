"""Command-line interface: ``coherent-qhe <command> ...``.

Exit codes: 0 success, 1 domain/validation/configuration error, 2 I/O error.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .atoms import (
    FourLevelAtom,
    MultiGroundAtom,
    TwoExcitedAtom,
    chi_bounds,
    epsilon_e,
    epsilon_e_bounds,
    epsilon_g,
    reference_nbar,
    validate_positivity,
)
from .dynamics import (
    birth_death_steady_state,
    evolve_mean_photon,
    rate_coefficients,
)
from .engine import coherent_efficiency, quantum_efficiency_cooling, quantum_efficiency_heating
from .steady_state import Tag, steady_state
from .sweep import PRESETS, ConfigError, emit, figure_preset, load_spec, run_specs
from .units import DomainError, temperature_from_mean_photon

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2

CSV_HELP = """\
CSV schema (UTF-8, LF, header row). Columns in this order, each present only
when used by some record:
  series, n_levels, chi, eps_g, eps_e, nbar, nbar_cold, validity, detail,
  nbar_q, t_ratio, eta_q, regime
validity is one of valid | out_of_bounds | divergent | zero | unphysical;
observable fields are empty unless validity is valid. Numbers use 17
significant digits.
"""


def _fmt(x) -> str:
    return format(x, ".17g") if isinstance(x, float) else str(x)


def _out(key: str, value) -> None:
    print(f"{key} = {_fmt(value)}")


def _add_atom_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--case", choices=("multi_ground", "two_excited", "four_level"), default="multi_ground")
    p.add_argument("--nbar", type=float, help="reference thermal photon number (sets populations)")
    p.add_argument("--ground-pop", type=float, help="population per ground level (instead of --nbar)")
    p.add_argument("--excited-pop", type=float, help="population per excited level (two_excited)")
    p.add_argument("--n-levels", type=int, default=2, help="ground levels N (multi_ground)")
    p.add_argument("--chi", type=float, default=0.0)
    p.add_argument("--eps-g", type=float, default=0.0)
    p.add_argument("--eps-e", type=float, default=0.0)


def _atom(args):
    if args.case == "multi_ground":
        if args.ground_pop is not None:
            return MultiGroundAtom(args.n_levels, args.ground_pop, args.chi)
        return MultiGroundAtom.from_reference(args.n_levels, _need_nbar(args), args.chi)
    if args.case == "two_excited":
        if args.excited_pop is not None:
            return TwoExcitedAtom(args.excited_pop, args.eps_e)
        return TwoExcitedAtom.from_reference(_need_nbar(args), args.eps_e)
    if args.ground_pop is not None:
        return FourLevelAtom(args.ground_pop, args.eps_g, args.eps_e)
    return FourLevelAtom.from_reference(_need_nbar(args), args.eps_g, args.eps_e)


def _need_nbar(args) -> float:
    if args.nbar is None:
        raise DomainError("give --nbar or explicit populations")
    return args.nbar


def cmd_validate(args) -> int:
    atom = _atom(args)
    report = validate_positivity(atom)
    nbar = reference_nbar(atom)
    _out("reference_nbar", nbar)
    _out("min_eigenvalue", report.min_eigenvalue)
    if isinstance(atom, MultiGroundAtom):
        b = chi_bounds(atom.n_levels, nbar)
        print(f"chi_bounds = {b.describe()}")
        in_bounds = atom.chi in b
    else:
        b = epsilon_e_bounds(nbar)
        print(f"eps_e_bounds = {b.describe()}")
        in_bounds = epsilon_e(atom) in b
    _out("psd", "valid" if report.valid else "violated")
    if not report.valid:
        _out("violation", report.violation)
    _out("steady_state_bounds", "satisfied" if in_bounds else "violated")
    return EXIT_OK if report.valid and in_bounds else EXIT_DOMAIN


def cmd_steady(args) -> int:
    atom = _atom(args)
    nbar = reference_nbar(atom)
    res = steady_state(atom, nbar)
    _out("reference_nbar", nbar)
    _out("eps_g", epsilon_g(atom))
    _out("eps_e", epsilon_e(atom))
    _out("status", res.status.value)
    if res.nbar_q is not None:
        _out("nbar_q", res.nbar_q)
    if res.temperature.is_finite:
        _out("t_q", res.temperature.theta)
        _out("t_ratio", res.temperature.theta / temperature_from_mean_photon(nbar))
    elif res.temperature.reason:
        _out("boundary", res.temperature.reason)
    _out("regime", res.regime.value)
    return EXIT_DOMAIN if res.status is Tag.UNPHYSICAL else EXIT_OK


def cmd_evolve(args) -> int:
    coeffs = rate_coefficients(_atom(args))
    traj = evolve_mean_photon(coeffs, args.nbar0, args.tau_end, args.dtau)
    lines = ["tau,nbar"] + [f"{t:.17g},{v:.17g}" for t, v in traj.rows()]
    text = "\n".join(lines) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if traj.diverged:
        print("warning: trajectory diverged (gain >= loss)", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_oracle(args) -> int:
    atom = _atom(args)
    coeffs = rate_coefficients(atom)
    res = steady_state(atom)
    if res.nbar_q is None:
        raise DomainError(f"no finite steady state ({res.status.value})")
    dist = birth_death_steady_state(coeffs, args.tail_tol)
    residual = abs(dist.mean - res.nbar_q) / res.nbar_q if res.nbar_q else abs(dist.mean)
    _out("gain", coeffs.gain)
    _out("loss", coeffs.loss)
    _out("n_max", dist.n_max)
    _out("analytic_nbar_q", res.nbar_q)
    _out("oracle_mean", dist.mean)
    _out("relative_residual", residual)
    return EXIT_OK if residual < args.rtol else EXIT_DOMAIN


def cmd_efficiency(args) -> int:
    nbar_h = args.nbar_hot
    nbar_c = args.nbar_cold if args.nbar_cold is not None else nbar_h
    if args.chi is not None:
        eps_g = args.chi * (args.n_levels - 1)
    else:
        eps_g = args.eps_g
    if args.eps_e:
        eta_q = coherent_efficiency(eps_g, args.eps_e, nbar_c, nbar_h)
    elif eps_g < 0.0:
        eta_q = quantum_efficiency_heating(eps_g, nbar_c, nbar_h)
    else:
        eta_q = quantum_efficiency_cooling(eps_g, nbar_c, nbar_h)
    eta = 1.0 - temperature_from_mean_photon(nbar_c) / temperature_from_mean_photon(nbar_h)
    _out("eps_g", eps_g)
    _out("eta_carnot", eta)
    _out("eta_q", eta_q)
    return EXIT_OK


def _overrides(pairs):
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise ConfigError("--set", f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_sweep(args) -> int:
    try:
        spec = load_spec(args.spec, _overrides(args.set))
    except OSError as exc:
        print(f"error: cannot read {args.spec}: {exc}", file=sys.stderr)
        return EXIT_IO
    records = run_specs([spec], args.workers)
    emit(records, args.format, args.output, spec.observables)
    return EXIT_OK


def cmd_figure(args) -> int:
    specs = figure_preset(args.preset, args.steps)
    records = run_specs(specs, args.workers)
    obs = sorted({o for s in specs for o in s.observables})
    emit(records, args.format, args.output, obs)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherent-qhe",
        description="Coherence-assisted photo-Carnot engine: steady states, dynamics and figure data.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="PSD and steady-state bound report for one atom")
    _add_atom_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("steady", help="steady photon number, effective temperature and regime")
    _add_atom_args(p)
    p.set_defaults(func=cmd_steady)

    p = sub.add_parser("evolve", help="integrate the mean-photon rate equation (CSV: tau,nbar)")
    _add_atom_args(p)
    p.add_argument("--nbar0", type=float, default=0.0)
    p.add_argument("--tau-end", type=float, required=True)
    p.add_argument("--dtau", type=float)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("oracle", help="birth-death Fock-space cross-check of the steady state")
    _add_atom_args(p)
    p.add_argument("--tail-tol", type=float, default=1e-12)
    p.add_argument("--rtol", type=float, default=1e-8)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("efficiency", help="coherence-modified Carnot efficiency at one point")
    p.add_argument("--nbar-hot", type=float, required=True)
    p.add_argument("--nbar-cold", type=float, help="defaults to --nbar-hot (single bath)")
    p.add_argument("--eps-g", type=float, default=0.0)
    p.add_argument("--chi", type=float, help="with --n-levels, sets eps_g = chi (N - 1)")
    p.add_argument("--n-levels", type=int, default=2)
    p.add_argument("--eps-e", type=float, default=0.0)
    p.set_defaults(func=cmd_efficiency)

    for name, helptext in (("sweep", "run a sweep described by an INI spec file"),
                           ("figure", "regenerate a figure dataset")):
        p = sub.add_parser(name, help=helptext, epilog=CSV_HELP,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        if name == "sweep":
            p.add_argument("--spec", required=True, help="INI sweep file")
            p.add_argument("--set", action="append", metavar="NAME=VALUE", help="override a [fixed] parameter")
            p.set_defaults(func=cmd_sweep)
        else:
            p.add_argument("preset", choices=PRESETS)
            p.add_argument("--steps", type=int, help="points per axis (fig4a/fig4b)")
            p.set_defaults(func=cmd_figure)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("-o", "--output", help="output path (default stdout)")
        p.add_argument("--workers", type=int, default=1, help="process-pool size; output is order-stable")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
