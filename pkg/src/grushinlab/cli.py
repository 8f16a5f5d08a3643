"""Command line: ``grushinlab verify|scan|tabulate``.

Exit codes: 0 success, 1 a check or scan target failed, 2 bad arguments or
configuration.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass, field, replace
import io
import json
import math
import os
import sys

import numpy as np

from . import quadrature, suites

CSV_COLUMNS = ("check_id", "paper_anchor", "value", "target", "residual", "tolerance", "pass")
SCANS = ("eq5-epsilon", "thm4-epsilon", "psi-asymptotics", "quotient-family")
TABLES = ("psi", "constants")
FAMILIES = ("powerlaw", "grushin2d", "grushin3d", "sphere")


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    tol_scale: float = 1.0
    suite_tol_scale: dict = field(default_factory=dict)
    budget_1d: int = quadrature.BUDGET_1D
    budget_2d: int = quadrature.BUDGET_2D
    out: str | None = None
    format: str = "csv"
    seed: int = 0
    workers: int = 1

    def validate(self):
        scales = [self.tol_scale, *self.suite_tol_scale.values()]
        if any(not (x > 0 and math.isfinite(x)) for x in scales):
            raise ConfigError("tolerance scales must be > 0")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.budget_1d <= 0 or self.budget_2d <= 0 or self.workers <= 0:
            raise ConfigError("budgets and workers must be positive")
        unknown = set(self.suite_tol_scale) - set(suites.SUITES)
        if unknown:
            raise ConfigError(f"unknown suite in tolerance overrides: {sorted(unknown)}")
        return self


_INT_KEYS = {"budget_1d", "budget_2d", "seed", "workers"}
_FLOAT_KEYS = {"tol_scale"}
_STR_KEYS = {"out", "format"}


def read_config(path):
    """Flat ``key = value`` lines; ``#`` starts a comment.

    Keys: tol_scale, tol_scale.<suite>, budget_1d, budget_2d, out, format,
    seed, workers.  All optional.
    """
    values = {}
    overrides = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, val = (part.strip() for part in line.split("=", 1))
        try:
            if key.startswith("tol_scale."):
                overrides[key.split(".", 1)[1]] = float(val)
            elif key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _INT_KEYS:
                values[key] = int(val)
            elif key in _STR_KEYS:
                values[key] = val
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}") from None
    return RunConfig(suite_tol_scale=overrides, **values)


def _apply_budgets(cfg):
    quadrature.BUDGET_1D = cfg.budget_1d
    quadrature.BUDGET_2D = cfg.budget_2d


def _worker(args):
    check_id, scale, seed, b1, b2 = args
    quadrature.BUDGET_1D, quadrature.BUDGET_2D = b1, b2
    return suites.run_check(check_id, scale, seed)


def run_suite(name, cfg):
    """Rows for every check in a suite, ordered by check id."""
    ids = suites.checks_for(name)
    jobs = []
    for cid in ids:
        scale = cfg.tol_scale * cfg.suite_tol_scale.get(suites.REGISTRY[cid].suite, 1.0)
        jobs.append((cid, scale, cfg.seed, cfg.budget_1d, cfg.budget_2d))
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_worker, jobs))
    else:
        rows = [_worker(job) for job in jobs]
    return sorted(rows, key=lambda r: r.check_id)


# ------------------------------------------------------------------ output

def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _render_csv(header, rows, meta):
    buf = io.StringIO()
    buf.write("# " + " ".join(f"{k}={_num(v)}" for k, v in meta.items()) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(x) for x in row])
    return buf.getvalue()


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else _num(x)
    return x


def _render_json(header, rows, meta):
    doc = dict(meta)
    doc["rows"] = [{h: _json_value(x) for h, x in zip(header, row)} for row in rows]
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def emit(name, header, rows, cfg, meta=None):
    meta = {"report": name, "seed": cfg.seed, "tol_scale": cfg.tol_scale, **(meta or {})}
    render = _render_json if cfg.format == "json" else _render_csv
    text = render(header, rows, meta)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        path = os.path.join(cfg.out, f"{name}.{cfg.format}")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(path)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ commands

def cmd_verify(args, cfg):
    if args.suite != "all" and args.suite not in suites.SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}; choose from all, {', '.join(suites.SUITES)}")
    rows = run_suite(args.suite, cfg)
    table = [(r.check_id, r.anchor, r.value, r.target, r.residual, r.tolerance, r.passed)
             for r in rows]
    emit(f"verify-{args.suite}", CSV_COLUMNS, table, cfg)
    for r in rows:
        if r.error:
            print(f"{r.check_id}: {r.error}", file=sys.stderr)
    return 0 if all(r.passed for r in rows) else 1


def _scan_eps(kind, cfg):
    from .variational import epsilon_scan_eq5, epsilon_scan_thm4

    r = epsilon_scan_eq5() if kind == "eq5-epsilon" else epsilon_scan_thm4()
    tol = 1e-2 * cfg.tol_scale
    header = ("row", "epsilon", "quotient", "target", "limit")
    rows = [("point", e, q, r.target, "") for e, q in zip(r.parameters, r.quotients)]
    ok = r.gap <= tol and r.below_target and r.monotone
    rows.append(("extrapolated", 0.0 if kind == "eq5-epsilon" else 0.5, r.limit, r.target, r.limit))
    return header, rows, ok, {"method": r.method, "gap": r.gap}


def _scan_psi(args, cfg):
    from .specialfn import psi, psi_large_u

    s = args.s if args.s is not None else 1.5
    if not s >= 1.0:
        raise ConfigError("psi-asymptotics needs s >= 1")
    us = np.logspace(-6, 4, 11)
    header = ("u", "psi_integral", "psi_hypergeometric", "ratio_large_u", "small_u_offset")
    rows = []
    for u in us:
        e = psi(u, s)
        rows.append((u, e.value_integral, e.value_hypergeometric,
                     e.value / float(psi_large_u(u, s)), e.value + math.log(u) / (4.0 * math.pi)))
    ratio_end = rows[-1][3]
    ok = 0.999 <= ratio_end <= 1.001 and abs(rows[0][4]) <= 1.0
    return header, rows, ok, {"s": s}


def _family(name, s):
    from .functionals import (GRUSHIN_2D_CONSTANT, GRUSHIN_3D_CONSTANT, SpectralParams,
                              grushin_quotient_2d, grushin_quotient_3d, hyperbolic_quotient,
                              sphere_radial_quotient)
    from .profiles import make_grushin_extremal, make_power_law

    if name == "powerlaw":
        prm = SpectralParams(s)
        lo = max(0.6, 1.0 / prm.p + 0.05)
        return (lambda a: hyperbolic_quotient(make_power_law(a), prm).quotient,
                (lo, 3.0), prm.A_p, "alpha")
    if name == "grushin2d":
        return (lambda g: grushin_quotient_2d(make_grushin_extremal(2, g)).quotient,
                (0.15, 0.6), GRUSHIN_2D_CONSTANT, "gamma")
    if name == "grushin3d":
        return (lambda g: grushin_quotient_3d(make_grushin_extremal(3, g)).quotient,
                (0.3, 1.0), GRUSHIN_3D_CONSTANT, "gamma")
    if name == "sphere":
        return (lambda a: sphere_radial_quotient(make_power_law(a), 6.0).quotient,
                (0.01, 2.0), 1.0, "alpha")
    raise ConfigError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def _scan_family(args, cfg):
    from .variational import maximize_quotient

    s = args.s if args.s is not None else 1.0
    if not s > 0:
        raise ConfigError("--s must be > 0")
    fn, bounds, ref, pname = _family(args.family, s)
    points = args.points
    if points < 3:
        raise ConfigError("--points must be at least 3")
    grid = np.linspace(bounds[0], bounds[1], points)
    header = ("row", pname, "quotient", "reference", "argmax")
    rows = [("point", a, fn(a), ref, "") for a in grid]
    best = maximize_quotient(fn, lambda a: a, [bounds], ref)
    rows.append(("maximum", best.params[0], best.value, ref, best.params[0]))
    return header, rows, best.within_reference, {"family": args.family, "s": s}


def cmd_scan(args, cfg):
    if args.scan in ("eq5-epsilon", "thm4-epsilon"):
        header, rows, ok, meta = _scan_eps(args.scan, cfg)
    elif args.scan == "psi-asymptotics":
        header, rows, ok, meta = _scan_psi(args, cfg)
    elif args.scan == "quotient-family":
        header, rows, ok, meta = _scan_family(args, cfg)
    else:
        raise ConfigError(f"unknown scan {args.scan!r}; choose from {', '.join(SCANS)}")
    emit(f"scan-{args.scan}", header, rows, cfg, meta)
    return 0 if ok else 1


def _constants_table():
    from .functionals import GRUSHIN_2D_CONSTANT, GRUSHIN_3D_CONSTANT, SpectralParams
    from .reductions import B6

    pi = math.pi
    rows = [
        ("grushin_r2", "pi^(-2/3)", GRUSHIN_2D_CONSTANT),
        ("hyperbolic_l6", "4 pi^(-2/3)", 4.0 * pi ** (-2.0 / 3.0)),
        ("hyperbolic_l6_quarter", "(4/3) pi^(-2/3)", (4.0 / 3.0) * pi ** (-2.0 / 3.0)),
        ("grushin_r3", "1/(2 pi)", GRUSHIN_3D_CONSTANT),
        ("hyperbolic_l4", "2/sqrt(pi)", 2.0 / math.sqrt(pi)),
        ("B_6", "4/(n(n-2)) [(n-1)/(2 pi)]^(2/n), n=3", B6),
    ]
    for s in (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0):
        prm = SpectralParams(s)
        rows.append((f"A_p(s={s:g})", f"(2 pi)^(2/p-1) s^(-1-2/p), p={prm.p:.17g}", prm.A_p))
    return ("name", "formula", "value"), rows


def _psi_table(args):
    from .specialfn import psi

    ss = [args.s] if args.s is not None else [1.0, 1.5, 2.0, 3.0]
    if any(not s >= 1.0 for s in ss):
        raise ConfigError("tabulate psi needs s >= 1")
    header = ("s", "u", "psi_integral", "psi_hypergeometric", "agreement", "closed_form_s1")
    rows = []
    for s in ss:
        for u in np.logspace(-3, 3, 13):
            e = psi(u, s)
            closed = math.log1p(1.0 / u) / (4.0 * math.pi) if s == 1.0 else ""
            rows.append((s, u, e.value_integral, e.value_hypergeometric, e.agreement, closed))
    return header, rows


def cmd_tabulate(args, cfg):
    if args.what == "constants":
        header, rows = _constants_table()
    elif args.what == "psi":
        header, rows = _psi_table(args)
    else:
        raise ConfigError(f"unknown table {args.what!r}; choose from {', '.join(TABLES)}")
    emit(f"tabulate-{args.what}", header, rows, cfg)
    return 0


# ------------------------------------------------------------------ entry point

def build_parser():
    def flags(default):
        common = argparse.ArgumentParser(add_help=False, argument_default=default)
        common.add_argument("--config", metavar="PATH")
        common.add_argument("--out", metavar="DIR")
        common.add_argument("--format", choices=("csv", "json"))
        common.add_argument("--seed", type=int)
        common.add_argument("--tol-scale", type=float, dest="tol_scale")
        common.add_argument("--workers", type=int)
        return common

    # flags may come before or after the subcommand; the subparser copies
    # are suppressed so they do not overwrite values given up front
    common = flags(argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="grushinlab", parents=[flags(None)],
                                description="Numerical checks of sharp Sobolev inequalities "
                                            "for the Grushin operator and the hyperbolic plane.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help="all, " + ", ".join(suites.SUITES))
    sc = sub.add_parser("scan", parents=[common], help="parameter scans")
    sc.add_argument("scan", help=", ".join(SCANS))
    sc.add_argument("--s", type=float)
    sc.add_argument("--family", default="powerlaw", help=", ".join(FAMILIES))
    sc.add_argument("--points", type=int, default=9)
    t = sub.add_parser("tabulate", parents=[common], help="tables of constants or psi_s")
    t.add_argument("what", help=", ".join(TABLES))
    t.add_argument("--s", type=float)
    return p


def _merge(cfg, args):
    updates = {k: getattr(args, k) for k in ("out", "format", "seed", "tol_scale", "workers")
               if getattr(args, k, None) is not None}
    return replace(cfg, **updates)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = read_config(args.config) if args.config else RunConfig()
        cfg = _merge(cfg, args).validate()
        _apply_budgets(cfg)
        handler = {"verify": cmd_verify, "scan": cmd_scan, "tabulate": cmd_tabulate}[args.command]
        return handler(args, cfg)
    except ConfigError as exc:
        print(f"grushinlab: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
