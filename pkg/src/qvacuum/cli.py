"""Command-line interface.

    qvacuum sweep --quantity alpha_eff --preset sm_paper --from 1e-3 --to 1e3 --points 7
    qvacuum potential --from 1e-3 --to 5 --points 6 --mode linearized
    qvacuum landau --preset sm_paper
    qvacuum wave-check --k 0,0,1e7 --E 1,0,0
    qvacuum registry dump --preset sm_fermions

Sweeps write CSV (``#`` metadata lines, then a header row); the other
commands write JSON. Exit codes: 0 success, 2 usage or validation error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import shlex
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .constants import SI, Regime, k2_from_energy
from .coulomb import phi_large_r, phi_r, phi_small_r
from .errors import ConvergenceError, LandauPoleError
from .fields import make_plane_wave, maxwell_residual
from .landau import semiclassical_closure, solve_landau_pole, solve_landau_pole_numeric
from .polarization import (
    alpha_eff_from_delta_pi,
    delta_pi_asymptotic,
    delta_pi_exact,
    eps0_from_delta_pi,
    pi2_zero,
)
from .registry import PRESETS, ParticleRegistry, RegistryError, load_registry, preset

EXIT_USAGE = 2
EXIT_NUMERICAL = 3
POLE = "POLE"

POLARIZATION_QUANTITIES = ("delta_pi", "alpha_eff", "eps0")
QUANTITIES = POLARIZATION_QUANTITIES + ("phi_r",)
POTENTIAL_MODES = ("full", "linearized", "small-r", "large-r")
DEFAULTS: dict[str, Any] = {
    "quantity": "delta_pi",
    "scale": "log",
    "regime": "spacelike",
    "include_zero": False,
    "tolerance": None,
    "output": None,
}


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


def fmt(value: float) -> str:
    return format(value, ".17g")


# -- inputs -------------------------------------------------------------------


def resolve_registry(args, default: str) -> tuple[ParticleRegistry, str]:
    if args.preset and args.registry:
        raise UsageError("give either --preset or --registry, not both")
    try:
        if args.registry:
            return load_registry(Path(args.registry)), f"file:{args.registry}"
        name = args.preset or default
        return preset(name), f"preset:{name}"
    except OSError as exc:
        raise UsageError(f"cannot read registry: {exc}") from None
    except RegistryError as exc:
        raise UsageError(f"invalid registry: {exc}") from None


def grid(args) -> list[float]:
    lo, hi, n = args.lo, args.hi, args.points
    if lo is None or hi is None or n is None:
        raise UsageError("--from, --to and --points are required")
    if args.scale != "log":
        raise UsageError("--scale: only 'log' is supported")
    if not (lo > 0 and hi > 0):
        raise UsageError("--from/--to: grid bounds must be positive")
    if not lo < hi:
        raise UsageError("--from must be smaller than --to")
    if n < 2:
        raise UsageError("--points must be at least 2")
    return [float(v) for v in np.logspace(math.log10(lo), math.log10(hi), n)]


def apply_config(args) -> None:
    if not getattr(args, "config", None):
        return
    try:
        cfg = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--config: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("--config: top level must be an object")
    for key, value in cfg.items():
        dest = {"from": "lo", "to": "hi"}.get(key, key.replace("-", "_"))
        if not hasattr(args, dest):
            raise UsageError(f"--config: unknown key {key!r}")
        if getattr(args, dest) is None:
            setattr(args, dest, value)


def fill_defaults(args) -> None:
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)


def header_lines(argv: Sequence[str], source: str, reg: ParticleRegistry) -> list[str]:
    return [
        f"# qvacuum {__version__}",
        f"# command: qvacuum {shlex.join(argv)}",
        f"# registry: {source} sha256={reg.digest()}",
    ]


# -- sweeps -------------------------------------------------------------------


def polarization_rows(args, reg: ParticleRegistry) -> list[list[str]]:
    if args.mode is None:
        args.mode = "exact"
    if args.mode not in ("exact", "asymptotic"):
        raise UsageError(f"--mode {args.mode!r} is not valid for {args.quantity} (exact|asymptotic)")
    try:
        regime = Regime(args.regime)
    except ValueError:
        raise UsageError(f"--regime must be spacelike or timelike, got {args.regime!r}") from None
    points = grid(args)
    if args.include_zero:
        if args.mode == "asymptotic":
            raise UsageError("--include-zero needs --mode exact (the asymptotic form diverges at Q = 0)")
        points = [0.0] + points
    tol = 1e-12 if args.tolerance is None else args.tolerance

    rows = []
    for q in points:
        k2 = k2_from_energy(q, regime)
        if args.mode == "exact":
            try:
                dpi, err = delta_pi_exact(k2, reg, SI, tol=tol, return_error=True)
            except ConvergenceError as exc:
                raise NumericalFailure(f"Q = {fmt(q)} GeV: {exc}") from None
        else:
            dpi, err = complex(delta_pi_asymptotic(k2, reg, SI)), 0.0
        row = [fmt(q), fmt(k2.k2_gev2), fmt(dpi.real), fmt(dpi.imag), fmt(err)]
        try:
            eps = eps0_from_delta_pi(dpi, SI) / SI.eps0
            a = alpha_eff_from_delta_pi(dpi, SI) / SI.alpha
            row += [fmt(eps), fmt(a.real), fmt(a.imag)]
        except LandauPoleError:
            row += [POLE, POLE, POLE]
        rows.append(row)
    return rows


POLARIZATION_HEADER = [
    "q_gev",
    "k2_gev2",
    "re_delta_pi",
    "im_delta_pi",
    "abserr",
    "eps0_ratio",
    "re_alpha_eff_ratio",
    "im_alpha_eff_ratio",
]
POTENTIAL_HEADER = ["r_over_compton", "r_m", "phi_volts", "correction", "abserr", "method"]


def potential_rows(args, reg: ParticleRegistry) -> list[list[str]]:
    mode = args.mode or "full"
    if mode not in POTENTIAL_MODES:
        raise UsageError(f"--mode {mode!r} is not valid for the potential ({'|'.join(POTENTIAL_MODES)})")
    rows = []
    lam = SI.reduced_compton_wavelength
    for x in grid(args):
        r = x * lam
        if mode == "small-r":
            s = phi_small_r(r, SI)
        elif mode == "large-r":
            s = phi_large_r(r, SI)
        else:
            kwargs = {} if args.tolerance is None else {"tolerance": args.tolerance}
            try:
                s = phi_r(r, reg, SI, mode, **kwargs)
            except LandauPoleError:
                rows.append([fmt(x), fmt(r), POLE, POLE, POLE, mode])
                continue
            if not s.converged:
                raise NumericalFailure(
                    f"r/lambda_C = {fmt(x)}: sine transform did not converge (abserr {s.abserr:.3g})"
                )
        rows.append([fmt(x), fmt(r), fmt(s.phi_coulomb), fmt(s.correction), fmt(s.abserr), s.method.value])
    return rows


def write_output(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def write_csv(args, argv, source, reg, header, rows) -> None:
    buf = io.StringIO()
    buf.write("\n".join(header_lines(argv, source, reg)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    write_output(args, buf.getvalue())


def cmd_sweep(args, argv) -> None:
    if args.quantity not in QUANTITIES:
        raise UsageError(f"--quantity must be one of {QUANTITIES}")
    if args.quantity == "phi_r":
        cmd_potential(args, argv)
        return
    reg, source = resolve_registry(args, "sm_paper")
    rows = polarization_rows(args, reg)
    write_csv(args, argv, source, reg, POLARIZATION_HEADER, rows)


def cmd_potential(args, argv) -> None:
    reg, source = resolve_registry(args, "electron")
    rows = potential_rows(args, reg)
    write_csv(args, argv, source, reg, POTENTIAL_HEADER, rows)


# -- reports ------------------------------------------------------------------


def write_json(args, doc: dict) -> None:
    write_output(args, json.dumps(doc, indent=2, sort_keys=False) + "\n")


def cmd_landau(args, argv) -> None:
    reg, source = resolve_registry(args, "sm_paper")
    res = solve_landau_pole(reg, SI)
    numeric = solve_landau_pole_numeric(reg, SI)
    doc = {
        "command": "landau",
        "version": __version__,
        "registry": {"source": source, "sha256": reg.digest()},
        "charge_sum": res.charge_sum,
        "mean_mass_gev": res.mean_mass_gev,
        "lambda_l_gev": res.lambda_l_gev,
        "log10_lambda_l_gev": res.log10_lambda_l_gev,
        "f_factor": res.f_factor,
        "closure": semiclassical_closure(res),
        "pi2_zero_at_pole": pi2_zero(res.lambda_l_gev, reg, False, SI) if math.isfinite(res.lambda_l_gev) else None,
        "per_species_with_A": {
            "log10_lambda_l_gev": numeric.log10_lambda_l_gev,
        },
        "warnings": list(reg.warnings),
    }
    write_json(args, doc)


def _parse_vector(text: str, what: str, kind=float) -> np.ndarray:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"{what}: expected three comma-separated components, got {text!r}")
    try:
        return np.array([kind(p) for p in parts])
    except ValueError:
        raise UsageError(f"{what}: cannot parse {text!r}") from None


def _pairs(vec) -> list[list[float]]:
    return [[float(np.real(v)), float(np.imag(v))] for v in vec]


def cmd_wave_check(args, argv) -> None:
    k = _parse_vector(args.k, "--k")
    E = _parse_vector(args.E, "--E", complex)
    reg = None
    if args.omega is not None:
        reg, _ = resolve_registry(args, "electron")
    try:
        wave = make_plane_wave(k, E, SI, omega=args.omega, registry=reg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = maxwell_residual(wave)
    tol = 1e-12 if args.tolerance is None else args.tolerance
    doc = {
        "command": "wave-check",
        "version": __version__,
        "k_vec": [float(v) for v in wave.k_vec],
        "omega": wave.omega,
        "on_shell": args.omega is None,
        "E0": _pairs(wave.E0),
        "B0": _pairs(wave.B0),
        "D0": _pairs(wave.D0),
        "H0": _pairs(wave.H0),
        "residual_gauss": res.gauss,
        "residual_ampere": res.ampere,
        "tolerance": tol,
        "status": "PASS" if res.passed(tol) else "FAIL",
    }
    write_json(args, doc)


def cmd_registry_dump(args, argv) -> None:
    reg, source = resolve_registry(args, "sm_paper")
    doc = {
        "command": "registry dump",
        "version": __version__,
        "source": source,
        "registry": reg.to_document(),
        "summary": {
            "effective_charge_sum": reg.effective_charge_sum(),
            "mean_mass_gev": reg.mean_mass_gev,
            "species_count": len(reg.species),
            "override": reg.override_only,
            "sha256": reg.digest(),
        },
        "warnings": list(reg.warnings),
    }
    write_json(args, doc)


# -- parser -------------------------------------------------------------------


def _add_registry_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=PRESETS, default=None)
    p.add_argument("--registry", metavar="FILE", default=None, help="JSON registry file")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", metavar="PATH", default=None, help="default: stdout")
    p.add_argument("--tolerance", type=float, default=None, metavar="ABS")
    p.add_argument("--config", metavar="FILE", default=None, help="JSON file of flag values; flags win")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--from", dest="lo", type=float, default=None)
    p.add_argument("--to", dest="hi", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--scale", choices=("log",), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qvacuum", description="Dielectric model of the quantum vacuum.")
    parser.add_argument("--version", action="version", version=f"qvacuum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="tabulate delta_pi, alpha_eff, eps0 or phi_r on a log grid")
    p.add_argument("--quantity", choices=QUANTITIES, default=None)
    _add_registry_flags(p)
    _add_grid(p)
    p.add_argument("--mode", default=None, help="exact|asymptotic (phi_r: full|linearized|small-r|large-r)")
    p.add_argument("--regime", choices=("spacelike", "timelike"), default=None)
    p.add_argument("--include-zero", action="store_true", default=None, help="prepend the on-shell point Q = 0")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("potential", help="screened Coulomb correction on a log grid of r in hbar/(m_e c)")
    _add_registry_flags(p)
    _add_grid(p)
    p.add_argument("--mode", choices=POTENTIAL_MODES, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("landau", help="Landau pole, factor f and closure")
    _add_registry_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_landau)

    p = sub.add_parser("wave-check", help="Maxwell residuals for a plane wave")
    p.add_argument("--k", required=True, metavar="KX,KY,KZ", help="wavevector in 1/m, e.g. --k=-1e6,0,2e6")
    p.add_argument("--E", required=True, metavar="EX,EY,EZ", help="E amplitude in V/m, complex allowed (1+2j)")
    p.add_argument("--omega", type=float, default=None, help="override omega (rad/s) for an off-shell wave")
    _add_registry_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_wave_check)

    p = sub.add_parser("registry", help="registry utilities")
    rsub = p.add_subparsers(dest="registry_command", required=True)
    d = rsub.add_parser("dump", help="validate and echo a registry")
    _add_registry_flags(d)
    _add_common(d)
    d.set_defaults(func=cmd_registry_dump)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        apply_config(args)
        fill_defaults(args)
        args.func(args, argv)
    except UsageError as exc:
        print(f"qvacuum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"qvacuum: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
