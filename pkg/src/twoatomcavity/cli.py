"""Command-line front end: evolve, scan, verify and figure workflows.

Data goes to the output file (or stdout with ``--out -``); logs go to
stderr.  Floating values are printed with 12 significant digits so that
re-running a configuration reproduces its output byte for byte.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
configuration error (Fock cutoff too small for the requested intensity).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import fock_oracle, sweep, verify
from .closed_form import ModelParams
from .fock_oracle import CutoffError
from .sweep import TimeGrid

EVOLVE_COLUMNS = ["tau", "S1", "S2", "Q1", "Q2", "varX1", "varX2",
                  "varY1", "varY2", "mean_n", "uncX", "uncY"]
SCAN_COLUMNS = ["axis_value", "min_S1", "argmin_tau", "delay", "intervals"]

#: Figure families: (kind, nbar, ratios, window, columns).
FIGURES = {
    1: ("multi_s", 0.2, [0.5], (0.0, 50.0, 5001), ["tau", "S1", "S2"]),
    2: ("s1", 0.2, [0.0, 0.5, 1.0], (0.0, 3.0, 3001), ["tau", "S1"]),
    3: ("s1", 0.4, [0.0, 0.5, 1.0], (0.0, 3.0, 3001), ["tau", "S1"]),
    4: ("s1", 0.8, [0.0, 0.5, 1.0], (0.0, 3.0, 3001), ["tau", "S1"]),
    5: ("s1", 1.0, [0.1, 0.3, 0.5, 0.7], (0.0, 3.0, 3001), ["tau", "S1"]),
    6: ("multi_q", 0.8, [0.5], (0.0, 50.0, 5001), ["tau", "Q1", "Q2"]),
    7: ("q1", 0.4, [0.0, 0.5, 1.0], (0.0, 4.0, 4001), ["tau", "Q1"]),
    8: ("q1", 0.8, [0.0, 0.5, 1.0], (0.0, 4.0, 4001), ["tau", "Q1"]),
    9: ("q1", 1.2, [0.0, 0.5, 1.0], (0.0, 4.0, 4001), ["tau", "Q1"]),
}


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return float(f"{value:.12g}")
    return value


def _write_table(out, columns, rows, fmt, comment=None):
    """Emit rows to a path or '-' in csv or json form."""
    if fmt == "csv":
        lines = []
        if comment:
            lines.append(f"# {comment}")
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        payload = [dict(zip(columns, map(_json_value, row))) for row in rows]
        if comment:
            payload = {"comment": comment, "rows": payload}
        text = json.dumps(payload, indent=1) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _log(msg):
    print(msg, file=sys.stderr)


def _load_config(path):
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    return cfg


def _setting(args, config, key, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, default)


def _model(args, config, default_nbar=0.2, default_ratio=0.5) -> ModelParams:
    cutoff = _setting(args, config, "cutoff", None)
    params = ModelParams(
        coupling_ratio=float(_setting(args, config, "ratio", default_ratio)),
        nbar=float(_setting(args, config, "nbar", default_nbar)),
        phase=float(_setting(args, config, "phase", 0.0)),
        cutoff=int(cutoff) if cutoff is not None else None,
    )
    tail = fock_oracle.poisson_tail(params.effective_cutoff(), params.nbar)
    if tail >= fock_oracle.TAIL_LIMIT:
        raise CutoffError(
            f"cutoff {params.effective_cutoff()} leaves a Poisson tail of "
            f"{tail:.3e} for nbar={params.nbar:g}")
    return params


def _grid(args, config, default_tmax, default_steps) -> TimeGrid:
    return TimeGrid(
        float(_setting(args, config, "tmin", 0.0)),
        float(_setting(args, config, "tmax", default_tmax)),
        int(_setting(args, config, "steps", default_steps)),
    )


def _record_row(r):
    return [r.time, r.s1, r.s2, r.q1, r.q2, r.var_x1, r.var_x2,
            r.var_y1, r.var_y2, r.mean_n, r.uncertainty_x, r.uncertainty_y]


def cmd_evolve(args, config) -> int:
    params = _model(args, config)
    grid = _grid(args, config, default_tmax=50.0, default_steps=5001)
    _log(f"evolve: nbar={params.nbar:g} R={params.coupling_ratio:g} "
         f"cutoff={params.effective_cutoff()} grid=[{grid.t_start:g},{grid.t_end:g}]x{grid.steps}")
    records = sweep.time_series(params, grid)
    rows = [_record_row(r) for r in records]
    _write_table(args.out, EVOLVE_COLUMNS, rows, args.format)
    return 0


def cmd_scan(args, config) -> int:
    values_raw = _setting(args, config, "values", None)
    if values_raw is None:
        raise ValueError("scan requires --values")
    if isinstance(values_raw, str):
        values = [float(v) for v in values_raw.split(",") if v.strip() != ""]
    else:
        values = [float(v) for v in values_raw]
    if not values:
        raise ValueError("scan requires a nonempty --values list")
    axis = _setting(args, config, "axis", "R")
    params = _model(args, config)
    grid = _grid(args, config, default_tmax=3.0, default_steps=3001)
    _log(f"scan: axis={axis} values={values} window=[{grid.t_start:g},{grid.t_end:g}]x{grid.steps}")
    result = sweep.scan(params, axis, values, window=grid, workers=args.workers)
    rows = [[p.value, p.min_s1, p.argmin_tau, p.delay, p.intervals]
            for p in result.points]
    _write_table(args.out, SCAN_COLUMNS, rows, args.format)
    return 0


def cmd_verify(args, config) -> int:
    report = verify.run_checks(fast=args.fast, swap_odd=args.debug_swap_odd_labels)
    text = json.dumps(report, indent=1) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    for chk in report["checks"]:
        status = "PASS" if chk["passed"] else "FAIL"
        dev = chk.get("max_deviation")
        extra = f" max_dev={dev:.3e} tol={chk['tolerance']:.1e}" if dev is not None else ""
        _log(f"[{status}] {chk['name']}{extra}")
    return 0 if report["all_passed"] else 1


def cmd_figure(args, config) -> int:
    kind, nbar, ratios, window, columns = FIGURES[args.id]
    nbar = float(_setting(args, config, "nbar", nbar))
    grid = _grid(args, config, default_tmax=window[1], default_steps=window[2])
    outdir = Path(args.out if args.out != "-" else ".")
    outdir.mkdir(parents=True, exist_ok=True)
    for ratio in ratios:
        params = _model(argparse.Namespace(nbar=nbar, ratio=ratio,
                                           phase=getattr(args, "phase", None),
                                           cutoff=getattr(args, "cutoff", None)),
                        config, default_nbar=nbar, default_ratio=ratio)
        records = sweep.time_series(params, grid)
        if kind == "multi_s":
            rows = [[r.time, r.s1, r.s2] for r in records]
        elif kind == "multi_q":
            rows = [[r.time, r.q1, r.q2] for r in records]
        elif kind == "s1":
            rows = [[r.time, r.s1] for r in records]
        else:
            rows = [[r.time, r.q1] for r in records]
        suffix = "csv" if args.format == "csv" else "json"
        if len(ratios) > 1:
            name = outdir / f"figure{args.id}_R{ratio:g}.{suffix}"
        else:
            name = outdir / f"figure{args.id}.{suffix}"
        comment = (f"figure {args.id}: nbar={nbar:g} R={ratio:g} window "
                   f"tau=[{grid.t_start:g},{grid.t_end:g}] steps={grid.steps}")
        _write_table(str(name), columns, rows, args.format, comment=comment)
        _log(f"wrote {name}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoatomcavity",
        description="Squeezing dynamics of two unequal-coupling atoms in a "
                    "lossless resonant cavity with an initially coherent field.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model(p):
        p.add_argument("--nbar", type=float, help="initial mean photon number")
        p.add_argument("--ratio", type=float, help="coupling ratio g2/g1")
        p.add_argument("--phase", type=float, help="coherent phase (radians)")
        p.add_argument("--cutoff", type=int, help="Fock truncation (default: automatic)")
        p.add_argument("--config", help="JSON file with defaults; flags override")

    def add_grid(p):
        p.add_argument("--tmin", type=float, help="window start (default 0)")
        p.add_argument("--tmax", type=float, help="window end")
        p.add_argument("--steps", type=int, help="number of grid points")

    def add_out(p):
        p.add_argument("--out", default="-", help="output path, or - for stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("evolve", help="squeezing time series at one parameter point")
    add_model(p); add_grid(p); add_out(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("scan", help="first-squeezing features along R or nbar")
    add_model(p); add_grid(p); add_out(p)
    p.add_argument("--axis", choices=("R", "nbar"))
    p.add_argument("--values", help="comma-separated parameter values")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the cross-validation suite")
    p.add_argument("--out", default="-", help="report path, or - for stdout")
    p.add_argument("--fast", action="store_true", help="smaller grids (smoke test)")
    p.add_argument("--debug-swap-odd-labels", action="store_true",
                   help="mislabel the singly-excited amplitudes to show the "
                        "suite catches it")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="emit plot-ready curve files for a figure family")
    p.add_argument("id", type=int, choices=sorted(FIGURES))
    add_model(p); add_grid(p)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(getattr(args, "config", None))
        return args.func(args, config)
    except CutoffError as exc:
        _log(f"error: {exc}")
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        _log(f"error: {exc}")
        return 2


def run() -> None:
    sys.exit(main())
