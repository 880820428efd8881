"""Batch driver: ``hhbar <command> [options]``.

Effective configuration = built-in defaults < ``--config`` file < flags.
Every output begins with ``#`` lines echoing the version and the effective
configuration; data lines after them depend only on the configuration.

Exit codes: 0 ok, 2 configuration error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from . import __version__, basis as basis_mod, integrals, reference, scattering, spectrum, wkb
from .config import COMMANDS, ConfigError, RunConfig, load_config_file
from .constants import CONSTANTS
from .potential import DomainError, Flavor, delta_lep, dump_curves, evaluate, load_builtin

log = logging.getLogger("hhbar")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4

NUMERICAL_ERRORS = (ArithmeticError, DomainError, scattering.WindowDomainError,
                    integrals.DivergentIntegralError, basis_mod.DegenerateGridError, ValueError)


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return str(x)


# ----------------------------------------------------------------- parsing

def _rgrid(text: str):
    """``lo:hi`` selects the reference R values in range; ``lo:hi:n`` is a log grid."""
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError("rgrid", f"cannot parse {text!r}") from None
    if len(vals) not in (2, 3) or not 0 < vals[0] < vals[1]:
        raise ConfigError("rgrid", "expected lo:hi or lo:hi:n with 0 < lo < hi")
    if len(vals) == 3:
        n = int(vals[2])
        if n < 2:
            raise ConfigError("rgrid", "need n >= 2 points")
        return np.geomspace(vals[0], vals[1], n)
    R = reference.TABLE5[:, 0]
    return R[(R >= vals[0]) & (R <= vals[1])]


def _float_list(text: str, key: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(key, f"cannot parse list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False, argument_default=S)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--flavor", help="bo or scaled")
    common.add_argument("--l", type=int)
    common.add_argument("--nmax", dest="n_max", type=int, help="number of cos/sin pairs")
    common.add_argument("--rmin", dest="r_min", type=float)
    common.add_argument("--rmax", dest="r_max", type=float)
    common.add_argument("--alpha-osc", dest="alpha_osc", type=float)
    common.add_argument("--tau", type=float, help="overlap eigenvalue cutoff (relative)")
    common.add_argument("--no-extended", dest="extended", action="store_false",
                        help="assemble and reduce in float64 only")
    common.add_argument("--window", nargs=2, type=float, metavar=("LO", "HI"))
    common.add_argument("--d", type=float)
    common.add_argument("--D", type=float)
    common.add_argument("--params", help="potential parameter file")
    common.add_argument("--output", "-o")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--workers", type=int)
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="hhbar", description="H-Hbar vibrational levels and near-threshold analysis")
    p.add_argument("--version", action="version", version=f"hhbar {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "potential":
            sp.add_argument("--r", type=float, nargs="+", default=S)
            sp.add_argument("--rgrid", default=S)
        elif name == "table5":
            sp.add_argument("--rgrid", default=S)
        elif name == "scatter":
            sp.add_argument("--scan", action="store_true", default=S,
                            help="attach the r_max/n_max uncertainty scan")
        elif name == "scan":
            sp.add_argument("--nmax-list", default=S)
            sp.add_argument("--rmax-list", default=S)
            sp.add_argument("--states", default=S, help="comma-separated state indices")
        elif name in ("wkb", "table4"):
            sp.add_argument("--calibration-rows", default=S)
            sp.add_argument("--eps-source", choices=("computed", "reference"), default=S)
        elif name == "basis":
            sp.add_argument("--dump-matrices", default=S, metavar="PREFIX",
                            help="write PREFIX_{S,T,V}.bin (and .csv with --format csv)")
    return p


_EXTRA_KEYS = ("r", "rgrid", "scan", "nmax_list", "rmax_list", "states", "calibration_rows",
               "eps_source", "dump_matrices", "workers")


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    """defaults < config file < flags, then validate."""
    args = vars(ns).copy()
    values = {"command": args.pop("command")}
    cfg_path = args.pop("config", None)
    if cfg_path is not None:
        if not Path(cfg_path).is_file():
            raise ConfigError("config", f"no such file {cfg_path}")
        values.update(load_config_file(cfg_path))
    if "window" in args:
        args["window_lo"], args["window_hi"] = args.pop("window")
    args.pop("verbose", None)
    extra = {k: args.pop(k) for k in _EXTRA_KEYS if k in args}
    if "flavor" in args:
        try:
            args["flavor"] = Flavor.parse(args["flavor"])
        except ValueError as exc:
            raise ConfigError("flavor", str(exc)) from None
    values.update(args)
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown option")
    if "workers" in extra and extra["workers"] < 1:
        raise ConfigError("workers", "must be >= 1")
    if "rgrid" in extra:
        _rgrid(extra["rgrid"])
    return RunConfig(**values, extra=extra).validate()


# ----------------------------------------------------------------- output

def header_lines(config: RunConfig, notes: dict | None = None) -> list[str]:
    lines = [f"# hhbar {__version__}", f"# command: {config.command}"]
    for k, v in config.echo().items():
        if k == "command":
            continue
        lines.append(f"# {k} = {fmt(v) if v is not None else ''}".rstrip())
    for k, v in (notes or {}).items():
        lines.append(f"# {k}: {fmt(v)}")
    return lines


def render_csv(config, columns, rows, notes=None) -> str:
    buf = io.StringIO()
    buf.write("\n".join(header_lines(config, notes)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Flavor):
        return obj.value
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def render_json(config, payload) -> str:
    doc = {"version": __version__, "config": config.echo(), "result": payload}
    return json.dumps(_jsonable(doc), indent=1) + "\n"


def emit(config, columns, rows, notes=None, payload=None) -> str:
    if config.format == "json":
        if payload is None:
            payload = {"notes": notes or {}, "columns": list(columns), "rows": [list(r) for r in rows]}
        return render_json(config, payload)
    return render_csv(config, columns, rows, notes)


# ----------------------------------------------------------------- commands

def _flavors():
    return (Flavor.BO, Flavor.MASS_SCALED)


def cmd_potential(config: RunConfig) -> str:
    if "r" in config.extra:
        R = np.array(config.extra["r"], dtype=float)
    elif "rgrid" in config.extra:
        R = _rgrid(config.extra["rgrid"])
    else:
        R = np.geomspace(0.05, 50.0, 200)
    model = spectrum.model_for(config)
    V = np.atleast_1d(evaluate(model, R))
    curves = dump_curves(R)
    rows = [[r, v, *c[1:]] for r, v, c in zip(R, V, curves)]
    return emit(config, ["R", "V", "V_BO", "V_scaled", "delta_lep_mh"], rows, {"E_inf": model.E_inf})


def _spectrum_rows(res):
    for s in res.states:
        yield s.nu_index, s.energy, res.threshold - s.energy, s.bound


def cmd_spectrum(config: RunConfig) -> str:
    res = spectrum.run(config, with_residual=True)
    notes = {"n_bound": res.n_bound, "threshold": res.threshold, **res.diagnostics}
    if config.format == "json":
        return render_json(config, spectrum.to_json_dict(res))
    return render_csv(config, ["nu", "energy", "eps", "bound"], _spectrum_rows(res), notes)


def _pair_runs(config: RunConfig, l: int):
    workers = config.extra.get("workers", 1)
    cfgs = [config.with_(flavor=f, l=l, params=None) for f in _flavors()]
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(2) as ex:
            return list(ex.map(spectrum.run, cfgs))
    return [spectrum.run(c) for c in cfgs]


def _ref_lookup(table, nu, col):
    hit = table[table[:, 0] == nu]
    return float(hit[0, col]) if len(hit) else float("nan")


def cmd_table2(config: RunConfig) -> str:
    bo, sc = _pair_runs(config, 0)
    n = min(len(reference.TABLE2), len(bo.states), len(sc.states))
    cols = ["nu", "E_BO", "E_scaled", "E_Pn", "delta", "eps_BO", "eps_scaled"]
    rows = []
    pn = spectrum.protonium_comparison(bo, n)
    for k in range(n):
        nu = k + 1
        Eb, Es = bo.states[k].energy, sc.states[k].energy
        vals = [Eb, Es, Eb + pn[k], pn[k], bo.threshold - Eb, sc.threshold - Es]
        refs = [_ref_lookup(reference.TABLE2, nu, c) for c in range(1, 7)]
        rows.append([nu, *vals, *refs, *(v - r for v, r in zip(vals, refs))])
    columns = cols + [f"ref_{c}" for c in cols[1:]] + [f"dev_{c}" for c in cols[1:]]
    return emit(config, columns, rows, {"n_bound_BO": bo.n_bound, "n_bound_scaled": sc.n_bound})


def cmd_table3(config: RunConfig) -> str:
    bo, sc = _pair_runs(config, 1)
    n = min(len(reference.TABLE3), len(bo.states), len(sc.states))
    cols = ["nu", "E_BO", "E_scaled", "eps_BO", "eps_scaled"]
    rows = []
    for k in range(n):
        nu = k + 1
        Eb, Es = bo.states[k].energy, sc.states[k].energy
        vals = [Eb, Es, bo.threshold - Eb, sc.threshold - Es]
        refs = [_ref_lookup(reference.TABLE3, nu, c) for c in range(1, 5)]
        rows.append([nu, *vals, *refs, *(v - r for v, r in zip(vals, refs))])
    columns = cols + [f"ref_{c}" for c in cols[1:]] + [f"dev_{c}" for c in cols[1:]]
    return emit(config, columns, rows, {"n_bound_BO": bo.n_bound, "n_bound_scaled": sc.n_bound})


def _calibration_rows(config):
    text = config.extra.get("calibration_rows")
    if text is None:
        return wkb.DEFAULT_CALIBRATION_ROWS
    try:
        rows = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ConfigError("calibration_rows", f"cannot parse {text!r}") from None
    if not set(rows) <= set(reference.table4("bo")):
        raise ConfigError("calibration_rows", "rows must be reference threshold rows (20..29)")
    return rows


def _eps_by_nu(config, flavor):
    """Dissociation energies for the threshold rows, computed or reference."""
    if config.extra.get("eps_source", "computed") == "reference":
        return {nu: e for nu, e in reference.table2_dissociation(flavor.value).items()
                if nu in reference.table4("bo")}
    res = spectrum.run(config.with_(flavor=flavor, l=0, params=None))
    return {s.nu_index: res.threshold - s.energy for s in res.bound_states
            if s.nu_index in reference.table4("bo")}


def tail_params(config, flavor, eps_by_nu):
    """Tail constants from config (d, D) or calibration on reference nu_th rows."""
    b6 = reference.BETA6_BO if flavor is Flavor.BO else reference.BETA6_SCALED
    params = wkb.TailParams.from_beta6(b6, CONSTANTS.mu_n)
    if config.d is not None and config.D is not None:
        return params.with_tail(config.d, config.D), "config"
    rows_nu = _calibration_rows(config)
    targets = reference.table4(flavor.value)
    missing = [nu for nu in rows_nu if nu not in eps_by_nu]
    if missing:
        raise wkb.CalibrationError(f"no bound state for calibration rows {missing}")
    cal = wkb.calibrate_tail_constants([(nu, eps_by_nu[nu], targets[nu]) for nu in rows_nu],
                                       params, wkb.TRUNCATION_OFFSET)
    return cal.params, "calibrated:" + "/".join(str(n) for n in rows_nu)


def cmd_wkb(config: RunConfig) -> str:
    flavor = config.flavor
    eps = _eps_by_nu(config, flavor)
    params, source = tail_params(config, flavor, eps)
    last = max(eps)
    a = wkb.wkb_scattering_length(eps[last], params)
    ref = reference.table4(flavor.value)
    rows = []
    for nu in sorted(eps):
        th = wkb.threshold_quantum_number(nu, eps[nu], params)
        rows.append([nu, eps[nu], th, int(np.floor(th)), ref[nu], th - ref[nu]])
    notes = {"beta6": params.beta6, "b": params.b, "d": params.d, "D": params.D,
             "tail_source": source, "a_wkb": a, "last_bound": last}
    return emit(config, ["nu", "eps", "nu_th", "floor", "ref_nu_th", "dev"], rows, notes)


def cmd_table4(config: RunConfig) -> str:
    per = {}
    notes = {}
    for flavor in _flavors():
        eps = _eps_by_nu(config, flavor)
        params, source = tail_params(config, flavor, eps)
        per[flavor] = (eps, params)
        tag = "BO" if flavor is Flavor.BO else "scaled"
        notes[f"d_{tag}"], notes[f"D_{tag}"] = params.d, params.D
        notes[f"a_wkb_{tag}"] = wkb.wkb_scattering_length(eps[max(eps)], params)
        notes[f"tail_source_{tag}"] = source
    rows = []
    for nu in sorted(reference.table4("bo")):
        vals = []
        for flavor in _flavors():
            eps, params = per[flavor]
            vals.append(wkb.threshold_quantum_number(nu, eps[nu], params) if nu in eps else float("nan"))
        refs = [reference.table4("bo")[nu], reference.table4("scaled")[nu]]
        rows.append([nu, *vals, *refs, vals[0] - refs[0], vals[1] - refs[1]])
    cols = ["nu", "nu_th_BO", "nu_th_scaled", "ref_nu_th_BO", "ref_nu_th_scaled",
            "dev_nu_th_BO", "dev_nu_th_scaled"]
    return emit(config, cols, rows, notes)


def cmd_table5(config: RunConfig) -> str:
    R = _rgrid(config.extra["rgrid"]) if "rgrid" in config.extra else reference.TABLE5[:, 0]
    bo, sc = load_builtin(Flavor.BO), load_builtin(Flavor.MASS_SCALED)
    d = np.atleast_1d(delta_lep(bo, sc, R))
    rows = []
    for r, x in zip(R, d):
        hit = reference.TABLE5[np.isclose(reference.TABLE5[:, 0], r, rtol=0, atol=1e-12)]
        ref = float(hit[0, 1]) if len(hit) else float("nan")
        rows.append([r, x, ref, x - ref])
    return emit(config, ["R", "delta_lep_mh", "ref_delta_lep_mh", "dev"], rows,
                {"limit_mh": 1000.0 / (CONSTANTS.m_p + 1)})


def cmd_scatter(config: RunConfig) -> str:
    window = (config.window_lo, config.window_hi)
    if config.extra.get("scan"):
        est = scattering.uncertainty_scan(config, workers=config.extra.get("workers", 1))
    else:
        est = None
    res = spectrum.run(config)
    if est is None:
        est = scattering.tangent_scattering_length(res, window)
    samples = scattering.csv_rows(res, est)
    notes = {k: v for k, v in est.to_dict().items() if k != "scan"}
    notes["window"] = f"{fmt(window[0])}:{fmt(window[1])}"
    if config.format == "json":
        payload = {"estimate": est.to_dict(),
                   "samples": {"R": [s[0] for s in samples], "u": [s[1] for s in samples],
                               "line": [s[2] for s in samples]}}
        return render_json(config, payload)
    return render_csv(config, ["R", "u", "line"], samples, notes)


def cmd_scan(config: RunConfig) -> str:
    n_list = [int(v) for v in _float_list(config.extra.get("nmax_list", "60,90,120"), "nmax_list")]
    r_list = _float_list(config.extra.get("rmax_list", "10,12,15,18,20,22"), "rmax_list")
    states = [int(v) for v in _float_list(config.extra.get("states", "26,27,28,29,30,31,32"), "states")]
    if not n_list or not r_list or not states:
        raise ConfigError("scan", "empty parameter list")
    if any(n < 2 for n in n_list) or any(r <= config.r_min for r in r_list):
        raise ConfigError("scan", "n_max >= 2 and r_max > r_min required for every scan point")
    out = spectrum.convergence_scan(config.flavor, config.l, n_list, r_list, r_min=config.r_min,
                                    indices=states, base=config,
                                    workers=config.extra.get("workers", 1))
    rows = [[p["n_max"], p["r_max"], p["n_bound"], *(p["energies"].get(k, float("nan")) for k in states)]
            for p in out]
    return emit(config, ["n_max", "r_max", "n_bound", *(f"E_{k}" for k in states)], rows)


def cmd_basis(config: RunConfig) -> str:
    functions = basis_mod.build(config.basis_spec())
    prefix = config.extra.get("dump_matrices")
    notes = {"size": len(functions)}
    if prefix:
        model = spectrum.model_for(config)
        S, T, V = integrals.assemble(functions, model, CONSTANTS.mu_n, config.extended)
        for name, M in (("S", S), ("T", T), ("V", V)):
            integrals.write_matrix_binary(f"{prefix}_{name}.bin", M)
            if config.format == "csv":
                np.savetxt(f"{prefix}_{name}.csv", np.asarray(M, dtype=float), delimiter=",", fmt="%.17g")
        notes["matrices"] = f"{prefix}_{{S,T,V}}.bin"
    return emit(config, ["index", "kind", "nu", "norm"], basis_mod.dump_rows(functions), notes)


HANDLERS = {
    "potential": cmd_potential, "spectrum": cmd_spectrum, "table2": cmd_table2,
    "table3": cmd_table3, "table4": cmd_table4, "table5": cmd_table5,
    "scatter": cmd_scatter, "wkb": cmd_wkb, "scan": cmd_scan, "basis": cmd_basis,
}


def run_command(config: RunConfig) -> str:
    return HANDLERS[config.command](config)


def _write(config: RunConfig, text: str):
    if config.output is None:
        sys.stdout.write(text)
        return
    path = Path(config.output)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text)
        tmp.replace(path)
    finally:
        tmp.unlink(missing_ok=True)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if getattr(ns, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = resolve_config(ns)
    except ConfigError as exc:
        print(f"hhbar: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"hhbar: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        text = run_command(config)
    except ConfigError as exc:
        print(f"hhbar: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NUMERICAL_ERRORS as exc:
        print(f"hhbar: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"hhbar: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        _write(config, text)
    except OSError as exc:
        print(f"hhbar: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
