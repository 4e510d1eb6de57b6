"""Command line interface: ``aqrm <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 precondition
violation. Errors are reported on stderr as a one-line JSON record.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bo, ed, io, spectral
from .errors import AQRMError, InvalidInputError, PreconditionError, SolverError
from .model import Branch, ModelParams, critical_coupling
from .potential import find_wells, taylor_coefficients, v_eff
from .results import Method, required_half_width

# overridable from --config; flag > config > built-in
DEFAULTS = {
    "levels": (int, 8),
    "basis": (int, bo.DEFAULT_BASIS),
    "fock": (int, ed.DEFAULT_FOCK),
    "quad_order": (int, None),
    "threshold": (float, spectral.DEFAULT_THRESHOLD),
    "points": (int, 401),
    "grid_points": (int, 801),
    "jobs": (int, 1),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(message)


def _model_flags(p, need_g=True):
    p.add_argument("--delta", type=float, required=True, help="two-level splitting")
    p.add_argument("--eta", type=float, default=0.0, help="bias")
    if need_g:
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--g", type=float, help="coupling")
        grp.add_argument("--g-over-gc", type=float, help="coupling in units of g_c")


def _overridable(p, *names):
    flags = {
        "levels": ("--levels", "number of levels"),
        "basis": ("--basis", "oscillator basis size N (BO)"),
        "fock": ("--fock", "Fock truncation (ED)"),
        "quad_order": ("--quad-order", "Gauss-Hermite order (BO)"),
        "threshold": ("--threshold", "degeneracy gap threshold"),
        "points": ("--points", "number of samples"),
        "grid_points": ("--grid-points", "number of grid points"),
        "jobs": ("--jobs", "worker threads for scans"),
    }
    for name in names:
        flag, help_ = flags[name]
        p.add_argument(flag, dest=name, type=DEFAULTS[name][0], default=None, help=help_)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aqrm", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key = value file with default overrides")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="lowest energies by BO and/or ED")
    _model_flags(p)
    p.add_argument("--method", choices=("bo", "ed", "both"), default="both")
    p.add_argument("--branch", choices=("neg", "pos", "negative", "positive"), default="neg")
    _overridable(p, "levels", "basis", "fock", "quad_order")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output")

    p = sub.add_parser("scan", help="energies over a coupling sweep")
    _model_flags(p, need_g=False)
    p.add_argument("--axis", choices=("g", "g-over-gc"), default="g-over-gc")
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="number of scan points")
    p.add_argument("--method", choices=("bo", "ed", "both"), default="ed")
    p.add_argument("--branch", choices=("neg", "pos", "negative", "positive"), default="neg")
    _overridable(p, "levels", "basis", "fock", "jobs")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("-o", "--output")

    p = sub.add_parser("potential", help="effective potential, Taylor coefficients, wells")
    _model_flags(p)
    p.add_argument("--range", type=float, help="sample xi in [-L, L] (default sqrt(2) g + 6)")
    _overridable(p, "points")
    p.add_argument("-o", "--output", help="CSV path; the JSON sidecar goes next to it")
    p.add_argument("--sidecar", help="explicit JSON sidecar path")
    p.add_argument("--svg", help="also write an SVG plot")

    p = sub.add_parser("wavefunction", help="spin-resolved wavefunction on a grid")
    _model_flags(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--method", choices=("bo", "ed", "both"), default="both")
    p.add_argument("--branch", choices=("neg", "pos", "negative", "positive"), default="neg")
    p.add_argument("--grid-min", type=float)
    p.add_argument("--grid-max", type=float)
    _overridable(p, "grid_points", "basis", "fock")
    p.add_argument("-o", "--output", help="CSV path; with --method both, _bo/_ed are appended")
    p.add_argument("--svg", help="also write an SVG plot")

    p = sub.add_parser("degeneracy-map", help="degeneracy onset over a bias sweep")
    _model_flags(p)
    p.add_argument("--eta-min", type=float)
    p.add_argument("--eta-max", type=float)
    p.add_argument("--eta-steps", type=int)
    p.add_argument("--eta-values", help="comma-separated list instead of min/max/steps")
    _overridable(p, "levels", "threshold", "fock")
    p.add_argument("-o", "--output")
    return parser


def _resolve(args, config):
    unknown = set(config) - set(DEFAULTS)
    if unknown:
        raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    for name, (kind, default) in DEFAULTS.items():
        if not hasattr(args, name) or getattr(args, name) is not None:
            continue
        if name in config:
            try:
                value = kind(config[name])
            except ValueError:
                raise InvalidInputError(f"config key {name!r}: cannot parse {config[name]!r}") from None
        else:
            value = default
        setattr(args, name, value)
    _validate(args)


def _validate(args):
    for name in ("levels", "jobs", "points", "grid_points"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            raise InvalidInputError(f"--{name.replace('_', '-')} must be >= 1")
    for name in ("basis", "fock"):
        v = getattr(args, name, None)
        if v is not None and v < 2:
            raise InvalidInputError(f"--{name} must be >= 2")
    if getattr(args, "quad_order", None) is not None and not 1 <= args.quad_order <= 2048:
        raise InvalidInputError("--quad-order must lie in [1, 2048]")
    if getattr(args, "threshold", None) is not None and not args.threshold > 0:
        raise InvalidInputError("--threshold must be positive")
    if args.command in ("spectrum", "scan") and args.method in ("bo", "both"):
        if args.levels > args.basis:
            raise InvalidInputError("--levels exceeds --basis")


def _params(args) -> ModelParams:
    g = args.g if args.g is not None else args.g_over_gc * critical_coupling(args.delta)
    return ModelParams(args.delta, g, args.eta)


def _emit(text: str, path, stdout):
    if path is None:
        stdout.write(text)
    else:
        Path(path).write_text(text, newline="")


def _methods(name):
    return [Method.BO, Method.ED] if name == "both" else [Method.parse(name)]


def cmd_spectrum(args, stdout, stderr):
    params = _params(args)
    branch = Branch.parse(args.branch)
    results = []
    for m in _methods(args.method):
        if m is Method.BO:
            results.append(bo.solve_bo(params, branch, args.basis, args.levels, args.quad_order))
        else:
            results.append(ed.solve_ed(params, args.fock, args.levels))
    if args.format == "csv":
        text = io.csv_text(*io.spectrum_rows(results))
    else:
        text = io.json_text("spectrum", {
            "zero_point_note": "BO energies include the oscillator zero-point 1/2; ED energies do not",
            "results": [r.to_dict() for r in results],
        })
    _emit(text, args.output, stdout)
    return 0


def _scan_values(args):
    if args.steps < 1:
        raise InvalidInputError("--steps must be >= 1")
    if args.steps > 1 and not args.max > args.min:
        raise InvalidInputError("--max must exceed --min")
    return np.linspace(args.min, args.max, args.steps)


def cmd_scan(args, stdout, stderr):
    values = _scan_values(args)
    axis = "g" if args.axis == "g" else "g_over_gc"
    tables = spectral.scan_coupling(
        args.delta, args.eta, values, args.method, args.levels, axis=axis,
        n_basis=args.basis, n_fock=args.fock, branch=args.branch, n_jobs=args.jobs,
    )
    if args.format == "csv":
        text = io.csv_text(*io.scan_rows(tables.values()))
    elif args.format == "json":
        text = io.json_text("scan", {"tables": [t.to_dict() for t in tables.values()]})
    else:
        series = []
        for m, t in tables.items():
            e = t.energies()
            style = {"dash": "4 3"} if m is Method.ED and len(tables) > 1 else {}
            for i in range(t.levels):
                series.append((f"{m.value} E{i}", t.values, e[:, i], style))
        text = io.svg_plot(series, title=f"delta={args.delta:g}, eta={args.eta:g}",
                           xlabel=axis, ylabel="E")
    _emit(text, args.output, stdout)
    return 0


def cmd_potential(args, stdout, stderr):
    params = _params(args)
    half = args.range if args.range is not None else 1.4142135623730951 * params.g + 6.0
    if not half > 0:
        raise InvalidInputError("--range must be positive")
    xi = np.linspace(-half, half, args.points)
    v = v_eff(params, xi)
    try:
        taylor = taylor_coefficients(params).to_dict()
    except PreconditionError as exc:
        print(f"warning: {exc}; Taylor coefficients omitted", file=stderr)
        taylor = None
    sidecar = io.json_text("potential", {
        "params": params.to_dict(),
        "taylor": taylor,
        "wells": find_wells(params).to_dict(),
    })
    _emit(io.csv_text(*io.potential_rows(xi, v)), args.output, stdout)
    sidecar_path = args.sidecar
    if sidecar_path is None and args.output is not None:
        sidecar_path = str(Path(args.output).with_suffix(".json"))
    if sidecar_path is not None:
        Path(sidecar_path).write_text(sidecar)
    if args.svg:
        Path(args.svg).write_text(io.svg_plot([("V_eff", xi, v)], title="effective potential",
                                              xlabel="xi", ylabel="V_eff"))
    return 0


def _suffixed(path, tag):
    p = Path(path)
    return p.with_name(f"{p.stem}_{tag}{p.suffix}")


def cmd_wavefunction(args, stdout, stderr):
    params = _params(args)
    half = required_half_width(params)
    lo = -half if args.grid_min is None else args.grid_min
    hi = half if args.grid_max is None else args.grid_max
    grid = np.linspace(lo, hi, args.grid_points)
    methods = _methods(args.method)
    if len(methods) > 1 and args.output is None:
        raise InvalidInputError("--method both writes one CSV per method; give --output")
    waves = []
    for m in methods:
        if m is Method.BO:
            waves.append(bo.bo_wavefunction(params, Branch.parse(args.branch), args.basis, args.level, grid))
        else:
            waves.append(ed.ed_wavefunction(params, args.fock, args.level, grid))
    for wf in waves:
        path = args.output if len(waves) == 1 else _suffixed(args.output, wf.method.value)
        _emit(io.csv_text(*io.wavefunction_rows(wf)), path, stdout)
    if args.svg:
        series = []
        for wf in waves:
            dash = "4 3" if wf.method is Method.ED else None
            series.append((f"{wf.method.value} up", wf.xi, wf.up, {"color": "#d62728", "dash": dash}))
            series.append((f"{wf.method.value} down", wf.xi, wf.down, {"color": "#1f77b4", "dash": dash}))
        Path(args.svg).write_text(io.svg_plot(
            series, title=f"level {args.level}, g/g_c={params.g_over_gc:.3g}, eta={params.eta:g}",
            xlabel="xi", ylabel="amplitude"))
    return 0


def _eta_values(args):
    if args.eta_values:
        try:
            values = [float(v) for v in args.eta_values.split(",") if v.strip()]
        except ValueError:
            raise InvalidInputError("--eta-values must be comma-separated numbers") from None
    elif None not in (args.eta_min, args.eta_max, args.eta_steps):
        if args.eta_steps < 1:
            raise InvalidInputError("--eta-steps must be >= 1")
        values = list(np.linspace(args.eta_min, args.eta_max, args.eta_steps))
    else:
        raise InvalidInputError("give --eta-values or all of --eta-min/--eta-max/--eta-steps")
    if not values:
        raise InvalidInputError("empty eta sweep")
    return values


def cmd_degeneracy_map(args, stdout, stderr):
    base = _params(args)
    reports = []
    for eta in _eta_values(args):
        params = base.with_eta(eta)
        reports.append(spectral.classify_degeneracy(params, args.levels, args.threshold, args.fock))
    _emit(io.csv_text(*io.degeneracy_rows(reports)), args.output, stdout)
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "scan": cmd_scan,
    "potential": cmd_potential,
    "wavefunction": cmd_wavefunction,
    "degeneracy-map": cmd_degeneracy_map,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        config = io.load_config(args.config) if args.config else {}
        _resolve(args, config)
        return COMMANDS[args.command](args, stdout, stderr)
    except AQRMError as exc:
        record = exc.to_record()
    except np.linalg.LinAlgError as exc:
        record = SolverError(str(exc)).to_record()
    except OSError as exc:
        record = InvalidInputError(f"I/O error: {exc}").to_record()
    print(json.dumps(record), file=stderr)
    return record["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
