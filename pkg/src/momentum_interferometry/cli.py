"""Command-line scenario runner.

    momentum-interferometry density    --config configs/fig2a.yaml --out results/
    momentum-interferometry sweep      --config configs/fig3.yaml --sweep 0.6pi:1.4pi:41
    momentum-interferometry resolvance --config configs/resolvance.yaml
    momentum-interferometry selftest   --out results/selftest

Exit status: 0 success, 1 a selftest check failed, 2 configuration error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Mapping, Sequence

from .dimensional import (
    MASS_RB87,
    LabContext,
    LaserPulse,
    MissingLaserBlock,
    imprinted_phase,
    notch_displacement,
    notch_velocity,
    resolvance,
)
from .gpe import GpeNotConverged
from .manybody import NoPeak, SingularP
from .notch import AmbiguousNotch, NoNotch
from .scenarios import (
    ConfigError,
    REGIMES,
    Table,
    expand_series,
    load_config,
    parse_phase,
    run_density,
    run_sweep,
    scenario_name,
    with_overrides,
)
from .wavefunction import EdgeDecayError, GridTooNarrow

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3
_NUMERICAL = (NoNotch, AmbiguousNotch, NoPeak, GpeNotConverged, SingularP,
              GridTooNarrow, EdgeDecayError, ArithmeticError)

_PLOT_TEMPLATE = '''"""Plot {csv_name} (generated; needs matplotlib)."""
import csv
import matplotlib.pyplot as plt

with open("{csv_name}", newline="") as fh:
    rows = list(csv.reader(fh))
header, data = rows[0], rows[1:]
x = [float(r[0]) if r[0] else float("nan") for r in data]
for j in range({first}, {last}):
    y = [float(r[j]) if r[j] else float("nan") for r in data]
    plt.plot(x, y, label=header[j])
plt.xlabel(header[0])
plt.legend(fontsize="small")
plt.savefig("{png_name}", dpi=150)
'''


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool,)):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".12g")


def table_to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def write_table(table: Table, out_dir: Path, stem: str, plot: bool = True) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{stem}.csv"
    path.write_text(table_to_csv(table), encoding="utf-8")
    if plot:
        numeric = [j for j, c in enumerate(table.columns) if c != "status"]
        script = _PLOT_TEMPLATE.format(csv_name=path.name, png_name=f"{stem}.png",
                                       first=1, last=max(numeric) + 1)
        (out_dir / f"{stem}_plot.py").write_text(script, encoding="utf-8")
    return path


def _raw_config(args) -> dict:
    cfg: dict = load_config(args.config) if args.config else {}
    if not cfg and args.regime is None:
        raise ConfigError("config: give --config or at least --regime")
    phi = None
    if args.phi is not None:
        phis = [p.strip() for p in args.phi.split(",")]
        phi = phis[0] if len(phis) == 1 else phis
    cfg = with_overrides(cfg, phi=phi, sweep=getattr(args, "sweep", None), regime=args.regime)
    if "name" not in cfg:
        cfg["name"] = Path(args.config).stem if args.config else cfg["regime"]
    return cfg


def cmd_density(args) -> int:
    for sc in expand_series(_raw_config(args)):
        path = write_table(run_density(sc), Path(args.out), scenario_name(sc), not args.no_plot)
        print(path)
    return EXIT_OK


def cmd_sweep(args) -> int:
    for sc in expand_series(_raw_config(args)):
        path = write_table(run_sweep(sc, args.jobs), Path(args.out), scenario_name(sc),
                           not args.no_plot)
        print(path)
    return EXIT_OK


def lab_context(cfg: Mapping) -> LabContext:
    lab = cfg.get("lab")
    if not isinstance(lab, Mapping):
        raise ConfigError("lab: resolvance needs a 'lab' block")
    known = {"mass", "omega", "t_flight", "delta_s", "laser"}
    unknown = set(lab) - known
    if unknown:
        raise ConfigError(f"lab.{sorted(unknown)[0]}: unknown field")
    vals = {}
    for key in ("omega", "t_flight", "delta_s"):
        if key not in lab:
            raise ConfigError(f"lab.{key}: required")
        vals[key] = _lab_number(lab[key], f"lab.{key}")
    vals["mass"] = _lab_number(lab.get("mass", MASS_RB87), "lab.mass")
    laser = None
    if "laser" in lab:
        las = lab["laser"]
        if not isinstance(las, Mapping) or set(las) != {"rabi", "detuning", "t_pulse"}:
            raise ConfigError("lab.laser: expected rabi, detuning, t_pulse")
        try:
            laser = LaserPulse(*(_lab_number(las[k], f"lab.laser.{k}")
                                 for k in ("rabi", "detuning", "t_pulse")))
        except ValueError as exc:
            raise ConfigError(f"lab.laser: {exc}") from exc
    try:
        return LabContext(vals["mass"], vals["omega"], vals["t_flight"], vals["delta_s"], laser)
    except ValueError as exc:
        raise ConfigError(f"lab: {exc}") from exc


def _lab_number(v, name) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{name}: expected a number, got {v!r}")
    return float(v)


def cmd_resolvance(args) -> int:
    cfg = load_config(args.config) if args.config else {}
    ctx = lab_context(cfg)
    if args.phi is not None:
        phi = parse_phase(args.phi)
    elif "phi" in cfg:
        phi = parse_phase(cfg["phi"])
    else:
        try:
            phi = imprinted_phase(ctx)
        except MissingLaserBlock as exc:
            raise ConfigError("phi: give phi or a lab.laser block") from exc
    report = {
        "phi [rad]": float(format(phi, ".12g")),
        "notch_velocity [m/s]": float(format(notch_velocity(phi, ctx), ".12g")),
        "displacement [m]": float(format(notch_displacement(phi, ctx), ".12g")),
        "resolvance [1]": float(format(resolvance(ctx), ".12g")),
    }
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "resolvance.json").write_text(text + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selfcheck import run_checks

    selected = None
    if args.only:
        try:
            selected = {int(x) for x in args.only.split(",")}
        except ValueError as exc:
            raise ConfigError("--only: expected comma-separated criterion numbers") from exc
    checks = run_checks(selected)
    table = Table(["criterion [#]", "title", "measured", "note", "status"],
                  [[c.number, c.title, c.measured, c.note, "pass" if c.passed else "fail"]
                   for c in checks])
    path = write_table(table, Path(args.out), "selftest", plot=False)
    for c in checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.number:2d} {c.title}: {c.measured}")
    print(path)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentum-interferometry",
        description="Momentum-space interferometry of phase-imprinted trapped gases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_sweep=False):
        p.add_argument("--config", help="YAML scenario file")
        p.add_argument("--out", default="results", help="output directory")
        p.add_argument("--phi", help="phase or comma-separated phases, e.g. 'pi' or '0.9pi,1.1pi'")
        p.add_argument("--regime", choices=REGIMES)
        p.add_argument("--no-plot", action="store_true", help="skip the plotting script")
        if with_sweep:
            p.add_argument("--sweep", help="START:STOP:COUNT phase sweep")
            p.add_argument("--jobs", type=int, default=1, help="rows computed concurrently")

    common(sub.add_parser("density", help="momentum densities per phase"))
    common(sub.add_parser("sweep", help="notch or peak metrics over a phase sweep"), True)
    p = sub.add_parser("resolvance", help="notch velocity, displacement and resolvance")
    p.add_argument("--config", help="YAML file with a 'lab' block")
    p.add_argument("--phi")
    p.add_argument("--out")
    p = sub.add_parser("selftest", help="run the quantitative checks")
    p.add_argument("--out", default="results/selftest")
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


_COMMANDS = {"density": cmd_density, "sweep": cmd_sweep,
             "resolvance": cmd_resolvance, "selftest": cmd_selftest}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
