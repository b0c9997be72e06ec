"""Command-line front end.

Every command resolves its parameters (flags over ``--from-manifest`` over
``--config`` over built-in defaults), writes its CSV files, a
``summary.json`` and a ``manifest.json`` into ``--out`` and nothing else.

Exit codes: 0 pass, 1 numeric failure or failed check, 2 partial results,
64 usage error, 65 bad input data.

CSV columns
-----------
resonances.csv  sheet_m, l, re_lambda0, im_lambda0, modulus, arg_on_sheet,
                zero_order, mult, residual_log10
counting.csv    sheet_m, r, count
detgrowth.csv   sheet_m, axis, x, re_log_fm, l_max_used, tail_estimate, then
                debye_window, debye_rel_diff (imag) or alt_route, route_diff
                (negray)
weyl.csv        r, phase, weyl_term, defect, normalized_defect
phasesum.csv    r, defect_sum, defect_sum_over_r
duality.csv     l, k, lambda0, side, delta, re_E, im_E, abs_E_minus_1
szero.csv       eps, deviation
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, detfm, resonances, spectral_checks
from . import partialwave as pw
from ._selftest import compare as _oracle_compare
from .errors import DomainError, ReslabError

EXIT_OK, EXIT_FAIL, EXIT_PARTIAL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# --- parameter tables ----------------------------------------------------------

def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [float(x) for x in str(text).split(",") if x.strip()]


def _ints(text):
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    return [int(x) for x in str(text).split(",") if x.strip()]


PROBLEM_PARAMS = {
    "dim": (int, 2), "radius": (float, 1.0), "bc": (str, "dirichlet"), "h0": (float, None),
    "c_l": (float, 2.0), "tail_tol": (float, 1e-10), "max_l": (int, 20000),
}

COMMAND_PARAMS = {
    "resonances": {"sheet": (int, 1), "rmax": (float, 20.0), "rmin": (float, None),
                   "grid": (int, 8)},
    "detgrowth": {"axis": (str, "imag"), "sheet": (int, 1), "points": (int, 8),
                  "min": (float, 5.0), "max": (float, 60.0)},
    "weyl": {"points": (int, 8), "min": (float, 10.0), "max": (float, 40.0)},
    "phasesum": {"points": (int, 6), "min": (float, 5.0), "max": (float, 40.0)},
    "duality": {"ls": (_ints, [0, 1, 2]), "zeros": (int, 3),
                "deltas": (_floats, [0.1, 0.05, 0.01])},
    "szero": {"eps": (_floats, [1e-2, 1e-4, 1e-6]), "l_max": (int, 3)},
}


def _add_problem_flags(sp):
    g = sp.add_argument_group("problem")
    g.add_argument("--dim", type=int, help="even dimension d >= 2 (default 2)")
    g.add_argument("--radius", type=float, help="ball radius R (default 1.0)")
    g.add_argument("--bc", choices=("dirichlet", "neumann", "robin"))
    g.add_argument("--h0", type=float, help="Robin constant, requires --bc robin")
    g.add_argument("--c-l", dest="c_l", type=float, help="initial l_max factor (default 2.0)")
    g.add_argument("--tail-tol", dest="tail_tol", type=float, help="truncation tolerance")
    g.add_argument("--max-l", dest="max_l", type=int, help="hard cap on l")
    g.add_argument("--config", help="JSON file of parameter values")
    g.add_argument("--from-manifest", dest="from_manifest", help="replay a manifest.json")
    g.add_argument("--out", default="reslab_out", help="output directory")


def build_parser():
    parser = _Parser(prog="reslab", description="Resonances and scattering checks for a ball.")
    parser.add_argument("--version", action="version", version=f"reslab {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    sp = sub.add_parser("resonances", help="locate resonances on one sheet and count them")
    sp.add_argument("--sheet", type=int, help="nonzero sheet index m (default 1)")
    sp.add_argument("--rmax", type=float, help="largest modulus (default 20)")
    sp.add_argument("--rmin", type=float, help="first counting radius (default min(5, rmax/4))")
    sp.add_argument("--grid", type=int, help="number of counting radii (default 8)")
    _add_problem_flags(sp)

    sp = sub.add_parser("detgrowth", help="log|f_m| along a ray and its growth exponent")
    sp.add_argument("--axis", choices=("imag", "real", "negray"))
    sp.add_argument("--sheet", type=int, help="m >= 1 (default 1)")
    sp.add_argument("--points", type=int)
    sp.add_argument("--min", type=float)
    sp.add_argument("--max", type=float)
    _add_problem_flags(sp)

    sp = sub.add_parser("weyl", help="scattering phase against the Weyl term")
    sp.add_argument("--points", type=int)
    sp.add_argument("--min", type=float)
    sp.add_argument("--max", type=float)
    _add_problem_flags(sp)

    sp = sub.add_parser("phasesum", help="sum of eigenphase distances to 2 pi Z")
    sp.add_argument("--points", type=int)
    sp.add_argument("--min", type=float)
    sp.add_argument("--max", type=float)
    _add_problem_flags(sp)

    sp = sub.add_parser("duality", help="s_l near interior eigenvalues")
    sp.add_argument("--ls", help="comma separated l values (default 0,1,2)")
    sp.add_argument("--zeros", type=int, help="interior zeros per l (default 3)")
    sp.add_argument("--deltas", help="comma separated offsets (default 0.1,0.05,0.01)")
    _add_problem_flags(sp)

    sp = sub.add_parser("szero", help="max_l |s_l(eps) - 1| as eps -> 0")
    sp.add_argument("--eps", help="comma separated eps values")
    sp.add_argument("--l-max", dest="l_max", type=int)
    _add_problem_flags(sp)

    sp = sub.add_parser("plot", help="write a gnuplot script for an output CSV")
    sp.add_argument("--input", required=True)
    sp.add_argument("--kind", choices=("loglog", "linear"))
    sp.add_argument("--dim", type=int, default=2, help="slope of the reference line")
    sp.add_argument("--out", default="reslab_out")

    sp = sub.add_parser("bessel-selftest", help=argparse.SUPPRESS)
    sp.add_argument("--out", default=None)
    # keep the hidden command out of the listing
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "bessel-selftest"]
    return parser


def _read_json(path, what):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"{what} {path} is not valid JSON: {exc}") from exc


def resolve_params(command, args) -> dict:
    """Flags > manifest > config file > defaults."""
    table = {**PROBLEM_PARAMS, **COMMAND_PARAMS[command]}
    params = {k: v[1] for k, v in table.items()}
    layers = []
    if args.config:
        cfg = _read_json(args.config, "config")
        if not isinstance(cfg, dict):
            raise DataError("config must be a JSON object")
        layers.append(("config", cfg))
    if args.from_manifest:
        man = _read_json(args.from_manifest, "manifest")
        if not isinstance(man, dict) or "params" not in man:
            raise DataError("manifest has no params block")
        if man.get("command") != command:
            raise UsageError(f"manifest is for {man.get('command')!r}, not {command!r}")
        layers.append(("manifest", man["params"]))
    flags = {k: getattr(args, k) for k in table if getattr(args, k, None) is not None}
    layers.append(("flags", flags))
    for source, layer in layers:
        for key, value in layer.items():
            key = key.replace("-", "_")
            if key not in table:
                raise UsageError(f"unknown parameter {key!r} in {source}")
            if value is None:
                params[key] = None
                continue
            try:
                params[key] = table[key][0](value)
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad value for {key}: {value!r}") from exc
    return params


def make_problem(params) -> pw.BallProblem:
    bc, h0 = params["bc"], params["h0"]
    if h0 is not None and bc != "robin":
        raise UsageError("--h0 requires --bc robin")
    if bc == "robin" and h0 is None:
        raise UsageError("--bc robin requires --h0")
    try:
        if bc == "dirichlet":
            return pw.BallProblem.dirichlet(params["dim"], params["radius"])
        if bc == "neumann":
            return pw.BallProblem.neumann(params["dim"], params["radius"])
        return pw.BallProblem.robin(h0, params["dim"], params["radius"])
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def make_config(params) -> detfm.DetConfig:
    try:
        return detfm.DetConfig(params["c_l"], params["tail_tol"], params["max_l"])
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


# --- output helpers ----------------------------------------------------------

def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def _fit_block(fit):
    return fit.to_dict() if fit is not None else None


def _geomgrid(lo, hi, n):
    if not (0 < lo < hi) or n < 2:
        raise UsageError(f"need 0 < min < max and at least 2 points, got [{lo}, {hi}] x {n}")
    return np.geomspace(lo, hi, n)


def _bounded(values, factor=10.0) -> bool:
    """max <= factor * median, on absolute values."""
    a = np.abs(np.asarray(values, dtype=float))
    return bool(a.max() <= factor * np.median(a))


# --- commands ------------------------------------------------------------------

def cmd_resonances(p, cfg, params, out: Path):
    m, rmax = params["sheet"], params["rmax"]
    if m == 0:
        raise UsageError("--sheet must be nonzero")
    if not rmax > 0:
        raise UsageError("--rmax must be > 0")
    rmin = params["rmin"] if params["rmin"] is not None else min(5.0, rmax / 4)
    grid = _geomgrid(rmin, rmax, params["grid"])
    res = resonances.find_resonances_detailed(p, m, rmax)
    rows = []
    for rec in res.records:
        z0 = rec.lambda0
        rows.append((m, rec.l, z0.real, z0.imag, rec.location.modulus, rec.location.arg,
                     rec.zero_order, rec.total_mult, rec.residual))
    write_csv(out / "resonances.csv", ["sheet_m", "l", "re_lambda0", "im_lambda0", "modulus",
                                       "arg_on_sheet", "zero_order", "mult", "residual_log10"], rows)
    table = resonances.counting_function(res.records, grid, m)
    write_csv(out / "counting.csv", ["sheet_m", "r", "count"],
              [(m, r, c) for r, c in zip(table.r_grid, table.counts)])
    band = (p.d - 0.3, p.d + 0.15)
    results = {
        "m": m, "r_max": rmax, "r_grid": table.r_grid, "n_m": table.counts,
        "fit": _fit_block(table.fit), "records": len(res.records),
        "total_multiplicity": int(sum(r.total_mult for r in res.records)),
        "merged": sum(r.merged for r in res.records),
        "fit_band": band,
        "fit_in_band": table.fit is not None and band[0] <= table.fit.exponent <= band[1],
        "partial": res.partial, "errors": [str(e) for e in res.errors],
    }
    return results, not res.partial, res.partial


def cmd_detgrowth(p, cfg, params, out: Path):
    axis, m = params["axis"], params["sheet"]
    if axis not in ("imag", "real", "negray"):
        raise UsageError(f"unknown axis {axis!r}")
    if m < 1:
        raise UsageError("detgrowth needs --sheet m >= 1")
    xs = _geomgrid(params["min"], params["max"], params["points"])
    header = ["sheet_m", "axis", "x", "re_log_fm", "l_max_used", "tail_estimate"]
    rows, ys, extra = [], [], []
    for x in xs:
        if axis == "imag":
            s = detfm.log_abs_fm_imaginary_detailed(p, m, x, cfg)
            win = detfm.log_abs_fm_imaginary_debye_window(p, m, x)
            extra.append((win, abs(win - s.value) / abs(s.value)))
        elif axis == "real":
            s = detfm.log_fm_detailed(p, m, complex(x, 0.0), cfg)
        else:
            s = detfm.log_abs_fm_negative_ray_detailed(p, m, x, cfg)
            alt = detfm.log_abs_fm_negative_ray_detailed(p, m, x, cfg, route="continuation",
                                                         l_fixed=s.l_max_used)
            extra.append((alt.value, abs(alt.value - s.value)))
        val = float(np.real(s.value))
        ys.append(val)
        rows.append([m, axis, x, val, s.l_max_used, s.tail_estimate])
    if axis == "imag":
        header += ["debye_window", "debye_rel_diff"]
    elif axis == "negray":
        header += ["alt_route", "route_diff"]
    rows = [r + list(e) for r, e in zip(rows, extra)] if extra else rows
    write_csv(out / "detgrowth.csv", header, rows)

    ys = np.array(ys)
    fit = None
    if np.all(ys > 0):
        fit = detfm.fit_growth(zip(xs, ys))
    results = {"axis": axis, "m": m, "x": xs, "re_log_fm": ys, "fit": _fit_block(fit)}
    if axis == "imag":
        band = (p.d - 0.15, p.d + 0.1)
        results["fit_band"] = band
        results["max_debye_rel_diff"] = max(e[1] for e in extra)
        ok = fit is not None and band[0] <= fit.exponent <= band[1]
    else:
        scaled = ys / xs ** (p.d - 1)
        results["nonnegative"] = bool(np.all(ys >= 0))
        results["scaled_max_over_median"] = (float(np.max(np.abs(scaled)) / np.median(np.abs(scaled)))
                                             if np.median(np.abs(scaled)) > 0 else None)
        results["bounded"] = _bounded(scaled)
        ok = results["nonnegative"] and results["bounded"]
        if axis == "negray":
            results["max_route_diff"] = max(e[1] for e in extra)
            ok = ok and results["max_route_diff"] <= 1e-8
    return results, bool(ok), False


def cmd_weyl(p, cfg, params, out: Path):
    r = np.linspace(params["min"], params["max"], params["points"])
    if not (0 < r[0] < r[-1]):
        raise UsageError("need 0 < min < max")
    rep = spectral_checks.weyl_report(p, r, cfg)
    write_csv(out / "weyl.csv", ["r", "phase", "weyl_term", "defect", "normalized_defect"],
              zip(rep.r, rep.phase, rep.weyl_term, rep.defect, rep.normalized_defect))
    rel = abs(rep.fitted_constant / rep.weyl_constant - 1)
    bounded = _bounded(rep.normalized_defect)
    results = {"weyl_constant": rep.weyl_constant, "fitted_constant": rep.fitted_constant,
               "fitted_correction": rep.fitted_correction, "constant_rel_diff": rel,
               "normalized_defect_bounded": bounded,
               "max_abs_normalized_defect": float(np.max(np.abs(rep.normalized_defect)))}
    return results, bool(bounded and rel < 0.05), False


def cmd_phasesum(p, cfg, params, out: Path):
    r = _geomgrid(params["min"], params["max"], params["points"])
    sums = np.array([spectral_checks.phase_defect_sum(p, x, cfg) for x in r])
    write_csv(out / "phasesum.csv", ["r", "defect_sum", "defect_sum_over_r"],
              zip(r, sums, sums / r))
    fit = detfm.fit_growth(zip(r, sums))
    band = (p.d - 1 - 0.3, p.d - 1 + 0.3)
    results = {"fit": _fit_block(fit), "fit_band": band}
    return results, band[0] <= fit.exponent <= band[1], False


def cmd_duality(p, cfg, params, out: Path):
    deltas = sorted(params["deltas"], reverse=True)
    rows, violations = [], []
    side = "below" if p.is_dirichlet else "above"
    for l in params["ls"]:
        for k in range(1, params["zeros"] + 1):
            lam0 = spectral_checks.interior_zero(p, l, k)
            trace = spectral_checks.duality_probe(p, l, k, deltas)
            dev = [abs(e - 1) for _, e in trace]
            for (delta, e), d in zip(trace, dev):
                rows.append((l, k, lam0, side, delta, e.real, e.imag, d))
                if (e.imag <= 0) if p.is_dirichlet else (e.imag >= 0):
                    violations.append({"l": l, "k": k, "delta": delta, "issue": "sign"})
            if any(b >= a for a, b in zip(dev, dev[1:])):
                violations.append({"l": l, "k": k, "issue": "not monotone"})
    write_csv(out / "duality.csv", ["l", "k", "lambda0", "side", "delta", "re_E", "im_E",
                                    "abs_E_minus_1"], rows)
    return {"violations": violations, "probes": len(rows)}, not violations, False


def cmd_szero(p, cfg, params, out: Path):
    eps = sorted(params["eps"], reverse=True)
    table = spectral_checks.s_zero_limit(p, eps, params["l_max"])
    write_csv(out / "szero.csv", ["eps", "deviation"], table)
    dev = [d for _, d in table]
    decreasing = all(b < a for a, b in zip(dev, dev[1:]))
    return {"deviation": dev, "strictly_decreasing": decreasing}, decreasing, False


COMMANDS = {"resonances": cmd_resonances, "detgrowth": cmd_detgrowth, "weyl": cmd_weyl,
            "phasesum": cmd_phasesum, "duality": cmd_duality, "szero": cmd_szero}


# --- plot ------------------------------------------------------------------------

# file stem -> (x column, y column, default kind, guide slope as a function of d)
PLOT_SCHEMAS = {
    "counting": ("r", "count", "loglog", lambda d: d),
    "detgrowth": ("x", "re_log_fm", "loglog", lambda d: d),
    "phasesum": ("r", "defect_sum", "loglog", lambda d: d - 1),
    "weyl": ("r", "phase", "linear", None),
    "szero": ("eps", "deviation", "loglog", None),
    "duality": ("delta", "abs_E_minus_1", "loglog", None),
    "resonances": ("re_lambda0", "im_lambda0", "linear", None),
}


def _read_columns(path: Path, want):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except csv.Error as exc:
        raise DataError(f"{path}: {exc}") from exc
    if not rows:
        raise DataError(f"{path} is empty")
    header = rows[0]
    missing = [c for c in want if c not in header]
    if missing:
        raise DataError(f"{path} lacks columns {missing}")
    idx = [header.index(c) for c in want]
    cols = [[] for _ in want]
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DataError(f"{path}:{n}: expected {len(header)} fields, got {len(row)}")
        for j, i in enumerate(idx):
            try:
                cols[j].append(float(row[i]))
            except ValueError as exc:
                raise DataError(f"{path}:{n}: {row[i]!r} is not a number") from exc
    return header, cols


def cmd_plot(args) -> int:
    src = Path(args.input)
    stem = src.stem
    schema = PLOT_SCHEMAS.get(stem)
    if schema is None:
        # unknown file name: recognise it by its columns
        for name, sch in PLOT_SCHEMAS.items():
            try:
                _read_columns(src, sch[:2])
            except DataError:
                continue
            stem, schema = name, sch
            break
    if schema is None:
        raise DataError(f"{src} matches no known CSV schema")
    xcol, ycol, kind, slope = schema
    header, (xs, ys) = _read_columns(src, (xcol, ycol))
    if not xs:
        raise DataError(f"{src} has no data rows")
    kind = args.kind or kind
    lines = [
        f"# gnuplot script for {src.name}",
        "set datafile separator ','",
        "set key top left",
        f"set xlabel '{xcol}'",
        f"set ylabel '{ycol}'",
    ]
    if kind == "loglog":
        lines.append("set logscale xy")
    plot = [f"'{src.resolve()}' skip 1 using {header.index(xcol) + 1}:{header.index(ycol) + 1} "
            f"with linespoints title '{ycol}'"]
    if slope is not None and kind == "loglog":
        pos = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
        if pos:
            s = slope(args.dim)
            x1, y1 = pos[-1]
            lines.append(f"guide(x) = {'%.17g' % (y1 / x1 ** s)} * x**{s}")
            plot.append(f"guide(x) with lines dashtype 2 title 'slope {s}'")
    lines.append("plot " + ", \\\n     ".join(plot))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    target = out / f"{stem}.gp"
    target.write_text("\n".join(lines) + "\n")
    print(target)
    return EXIT_OK


# --- hidden self-test --------------------------------------------------------------

def cmd_bessel_selftest(args) -> int:
    report = _oracle_compare()
    ok = True
    for regime, row in sorted(report.items()):
        flag = "ok" if row["worst_ratio"] <= 1 else "FAIL"
        ok = ok and row["worst_ratio"] <= 1
        print(f"{regime:12s} n={row['n']:4d} max_rel_error={row['max_rel_error']:.3e} "
              f"tol={row['tol']:.0e} {flag}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "bessel_selftest.json").write_text(json.dumps(_jsonable(report), indent=2) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# --- driver -------------------------------------------------------------------------

def run_command(command, args, argv) -> int:
    params = resolve_params(command, args)
    p = make_problem(params)
    cfg = make_config(params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    results, passed, partial = COMMANDS[command](p, cfg, params, out)
    wall = time.perf_counter() - t0
    summary = {"problem": p.to_dict(), "command": command, "params": params,
               "det_config": cfg.to_dict(), "results": results, "pass": bool(passed)}
    (out / "summary.json").write_text(json.dumps(_jsonable(summary), indent=2) + "\n")
    csvs = sorted(out.glob("*.csv"))
    manifest = {
        "tool": "reslab", "version": __version__, "command": command, "argv": list(argv),
        "params": params, "problem": p.to_dict(), "det_config": cfg.to_dict(),
        "wall_time_s": wall, "suites": {command: bool(passed)},
        "outputs": {f.name: _sha256(f) for f in csvs + [out / "summary.json"]},
    }
    (out / "manifest.json").write_text(json.dumps(_jsonable(manifest), indent=2) + "\n")
    print(f"{command}: {'pass' if passed else 'FAIL'}{' (partial)' if partial else ''} -> {out}")
    if partial:
        return EXIT_PARTIAL
    return EXIT_OK if passed else EXIT_FAIL


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "plot":
            return cmd_plot(args)
        if args.command == "bessel-selftest":
            return cmd_bessel_selftest(args)
        return run_command(args.command, args, argv)
    except UsageError as exc:
        print(f"reslab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"reslab: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ReslabError as exc:
        print(f"reslab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
