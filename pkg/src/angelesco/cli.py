"""Configuration-driven command line driver.

Three subcommands: ``compute`` writes one CSV of limit values per requested
method plus a JSON sidecar, ``validate`` runs all methods and checks
cross-method agreement, identities and residuals against tolerances, and
``plot`` renders CSVs into a four-panel SVG.  Settings come from an optional
``key = value`` config file; every key can also be overridden by a
``--key value`` flag.  Outputs are deterministic: identical configuration
produces byte-identical CSVs.

Exit codes: 0 success, 1 validation failure, 2 input or configuration
error, 3 numerical failure.
"""
import argparse
import dataclasses
import json
import sys as _sys
import time
from pathlib import Path

import numpy as np

from .crossval import compare, identity_checks, ode_residuals
from .errors import NumericalFailure
from .lattice import curve_from_lattice, solve_lattice
from .ode import solve_system
from .surface import limit_curve, plateau_bounds
from .systems import AngelescoSystem, Interval, LimitCurve, star_normalize

METHODS = ("dis", "ode", "surface")


@dataclasses.dataclass
class RunConfig:
    """All knobs of a run; field names double as config and flag names."""
    interval1: tuple = (-2.0, 0.0)
    interval2: tuple = (0.0, 1.0)
    weight1: str = "chebyshev2"
    weight2: str = "chebyshev2"
    grid_points: int = 181
    lattice_level: int = 1500
    snapshot_levels: tuple = ()          # empty means lattice_level // 2
    extrapolate: bool = False
    ode_steps: int = 10000
    eps_start: float = 1e-6
    exclude_margin: float = 0.05
    fd_step: float = 1e-3
    residual_grid_points: int = 2001
    tol_pair_exact: float = 1e-4
    tol_pair_lattice: float = 2e-2
    tol_identity: float = 1e-8
    tol_residual: float = 1e-3
    output_dir: str = "out"

    def system(self):
        return AngelescoSystem(Interval(*self.interval1),
                               Interval(*self.interval2),
                               self.weight1, self.weight2)

    def grid(self):
        return np.linspace(0.0, 1.0, self.grid_points)

    def snapshots(self):
        if self.snapshot_levels:
            return set(self.snapshot_levels)
        return {self.lattice_level // 2}

    def as_dict(self):
        d = dataclasses.asdict(self)
        d["interval1"] = list(self.interval1)
        d["interval2"] = list(self.interval2)
        d["snapshot_levels"] = sorted(self.snapshots())
        return d


def _coerce(name, default, raw):
    """Parse a raw config/flag string into the type of the field default."""
    raw = raw.strip()
    try:
        if isinstance(default, bool):
            if raw.lower() in ("true", "1", "yes", "on"):
                return True
            if raw.lower() in ("false", "0", "no", "off"):
                return False
            raise ValueError(raw)
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        if isinstance(default, tuple):
            if not raw:
                return ()
            parts = [p.strip() for p in raw.split(",")]
            elem = float if name.startswith("interval") else int
            return tuple(elem(p) for p in parts)
        return raw
    except ValueError as exc:
        raise ValueError(f"bad value for {name}: {raw!r}") from exc


def parse_config_file(path):
    """Read ``key = value`` lines (''#'' comments, blank lines skipped)."""
    entries = {}
    text = Path(path).read_text(encoding="utf-8")
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{ln}: expected 'key = value'")
        key, raw = line.split("=", 1)
        entries[key.strip()] = raw.strip()
    return entries


def load_config(config_path, overrides):
    """Build a RunConfig from defaults, an optional file, and flag overrides."""
    cfg = RunConfig()
    fields = {f.name: f for f in dataclasses.fields(RunConfig)}
    sources = []
    if config_path:
        sources.append(parse_config_file(config_path))
    sources.append(overrides)
    for src in sources:
        for key, raw in src.items():
            if key not in fields:
                raise ValueError(f"unknown config key: {key}")
            default = getattr(RunConfig(), key)
            setattr(cfg, key, _coerce(key, default, raw))
    return cfg


# ---------------------------------------------------------------------------
# CSV format
# ---------------------------------------------------------------------------

CSV_HEADER = "s,A1,A2,B1,B2"


def _num(v):
    # fixed decimal notation, 12 significant digits, no exponent
    return np.format_float_positional(float(v), precision=12, unique=False,
                                      fractional=False, trim="k")


def write_curve_csv(path, curve):
    lines = [CSV_HEADER]
    for i in range(len(curve)):
        lines.append(",".join(_num(v) for v in
                              (curve.s[i], curve.A1[i], curve.A2[i],
                               curve.B1[i], curve.B2[i])))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_curve_csv(path, method=None):
    """Parse a curve CSV back into a :class:`LimitCurve` (unvalidated)."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != CSV_HEADER:
        raise ValueError(f"{path}: expected header '{CSV_HEADER}'")
    rows = []
    for ln, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}:{ln}: expected 5 fields")
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise ValueError(f"{path}:{ln}: non-numeric field") from exc
    arr = np.array(rows)
    if arr.size == 0:
        raise ValueError(f"{path}: no data rows")
    return LimitCurve(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4],
                      method or Path(path).stem, {"source": str(path)})


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _compute_curves(cfg, methods):
    """Run the requested methods; returns ({method: curve}, meta dict)."""
    system = cfg.system()
    grid = cfg.grid()
    sc, _ = star_normalize(system)
    t0 = time.perf_counter()
    info = plateau_bounds(sc)
    timings = {"plateau": time.perf_counter() - t0}
    curves = {}
    meta = {"config": cfg.as_dict(), "plateau": info.as_dict(),
            "timings": timings}
    for method in METHODS:
        if method not in methods:
            continue
        t0 = time.perf_counter()
        if method == "dis":
            lat = solve_lattice(system, cfg.lattice_level, cfg.snapshots())
            curves[method] = curve_from_lattice(lat, grid, cfg.extrapolate)
            meta["lattice"] = {"level": lat.m,
                               "max_residual": lat.max_residual(),
                               "extrapolated": cfg.extrapolate}
        elif method == "ode":
            curves[method] = solve_system(system, info, grid,
                                          cfg.ode_steps, cfg.eps_start)
            meta["ode"] = {k: curves[method].meta[k]
                           for k in ("splice_mismatch", "identity_drift")}
        else:
            curves[method] = limit_curve(system, grid, info)
        timings[method] = time.perf_counter() - t0
    return curves, meta, info


def run_compute(cfg, methods):
    methods = set(methods)
    if not methods:
        raise ValueError("no methods selected")
    unknown = methods - set(METHODS)
    if unknown:
        raise ValueError(f"unknown methods: {sorted(unknown)}")
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    curves, meta, _ = _compute_curves(cfg, methods)
    for method, curve in curves.items():
        write_curve_csv(out / f"{method}.csv", curve)
    with open(out / "run_meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for method in METHODS:
        if method in curves:
            print(f"wrote {out / (method + '.csv')}")
    print(f"wrote {out / 'run_meta.json'}")
    return 0


def run_validate(cfg):
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    curves, meta, info = _compute_curves(cfg, set(METHODS))
    checks = []

    pairs = (("surface", "ode", 0.0, cfg.tol_pair_exact),
             ("dis", "surface", cfg.exclude_margin, cfg.tol_pair_lattice),
             ("dis", "ode", cfg.exclude_margin, cfg.tol_pair_lattice))
    comparisons = []
    for ma, mb, margin, tol in pairs:
        rep = compare(curves[ma], curves[mb], exclude_margin=margin,
                      window=info, tolerance=tol)
        comparisons.append(rep.as_dict())
        checks.append((f"compare {ma} vs {mb}", rep.worst(), tol, rep.passed))

    ide = identity_checks(curves["surface"], window=info)
    ide_pass = ide.max_abs <= cfg.tol_identity and ide.endpoint_ok \
        and ide.min_gap > 0.0
    checks.append(("identity surface", ide.max_abs, cfg.tol_identity, ide_pass))

    res_grid = np.linspace(0.0, 1.0, cfg.residual_grid_points)
    res_curve = limit_curve(cfg.system(), res_grid, info)
    res = ode_residuals(res_curve, h=cfg.fd_step, window=info)
    res_pass = res.worst() <= cfg.tol_residual
    checks.append(("ode residuals", res.worst(), cfg.tol_residual, res_pass))

    passed = all(ok for _, _, _, ok in checks)
    report = {"config": meta["config"], "plateau": meta["plateau"],
              "comparisons": comparisons,
              "identity": {**ide.as_dict(), "tolerance": cfg.tol_identity,
                           "passed": bool(ide_pass)},
              "residuals": {**res.as_dict(), "tolerance": cfg.tol_residual,
                            "passed": bool(res_pass)},
              "passed": bool(passed)}
    with open(out / "validate_report.json", "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for name, worst, tol, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: "
              f"worst {worst:.3e} tolerance {tol:.1e}")
    print(f"report: {out / 'validate_report.json'}")
    return 0 if passed else 1


def run_plot(paths, out_path):
    curves = []
    labels = []
    for p in paths:
        c = read_curve_csv(p)
        curves.append(c)
        labels.append(Path(p).stem)
    comments = [f"source: {', '.join(str(p) for p in paths)}"]
    base = curves[0].s
    packs = []
    for c in curves:
        if c.s.size == base.size and np.array_equal(c.s, base):
            s, vals = c.s, {f: getattr(c, f) for f in ("A1", "A2", "B1", "B2")}
        else:
            lo = max(base[0], c.s[0])
            hi = min(base[-1], c.s[-1])
            keep = (base >= lo) & (base <= hi)
            if not np.any(keep):
                raise ValueError(f"{c.method}: no grid overlap for plotting")
            s = base[keep]
            vals = {f: np.interp(s, c.s, getattr(c, f))
                    for f in ("A1", "A2", "B1", "B2")}
            comments.append(f"warning: {c.method} resampled onto "
                            f"{s.size} shared grid points")
        packs.append((s, vals))
    from .svgfig import render_panels
    svg = render_panels(packs, labels, comments)
    Path(out_path).write_text(svg, encoding="utf-8")
    print(f"wrote {out_path}")
    return 0


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _add_config_flags(sub):
    sub.add_argument("--config", metavar="PATH", help="config file")
    for f in dataclasses.fields(RunConfig):
        sub.add_argument(f"--{f.name}", metavar="VALUE", dest=f"opt_{f.name}")


def _overrides(args):
    out = {}
    for f in dataclasses.fields(RunConfig):
        v = getattr(args, f"opt_{f.name}", None)
        if v is not None:
            out[f.name] = v
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="angelesco",
        description="Limits of nearest-neighbor recurrence coefficients "
                    "for two-interval Angelesco systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="write limit-curve CSVs")
    _add_config_flags(p_compute)
    p_compute.add_argument("--methods", default="dis,ode,surface",
                           help="comma list from dis,ode,surface")

    p_validate = sub.add_parser("validate",
                                help="cross-method agreement checks")
    _add_config_flags(p_validate)

    p_plot = sub.add_parser("plot", help="render CSVs to a 4-panel SVG")
    p_plot.add_argument("csvs", nargs="+", help="curve CSV paths")
    p_plot.add_argument("--out", required=True, help="output SVG path")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            cfg = load_config(args.config, _overrides(args))
            methods = [m for m in args.methods.split(",") if m]
            return run_compute(cfg, methods)
        if args.command == "validate":
            cfg = load_config(args.config, _overrides(args))
            return run_validate(cfg)
        return run_plot(args.csvs, args.out)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc} {exc.context}", file=_sys.stderr)
        return 3
    except (ValueError, TypeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
