"""Command-line entry point: scans, ratio verdicts and table generation.

Every run writes a ``manifest.json`` holding the full configuration, the
seed and the tool version; ``uniradar rerun manifest.json`` replays it and
reproduces every artifact byte for byte.

Exit codes: 0 when the design passes, 3 when any direction (or the ratio
statistic) rejects it, 1 on errors, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .designs import Design, gen_halton, gen_linear_oa49, gen_uniform, load_csv
from .global_stat import GnQuantileTable, gn, gn_table, load_default_table
from .radar import (DEFAULT_STEP_2D, DEFAULT_STEP_3D, radar2d, radar3d,
                    scan_subspaces)
from .render import FigureSpec, plot_design2d, plot_radar2d, plot_radar3d_heatmap, \
    plot_radar3d_pins

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECT = 3

_GENERATORS = ("uniform", "halton", "oa49")
_FORMATS = ("json", "csv", "svg")


@dataclass
class RunConfig:
    """One reproducible run: exactly one input source plus its options."""

    subcommand: str
    input: str | None = None
    gen: str | None = None
    n: int = 100
    d: int = 2
    dims: str = ""
    seed: int = 0
    skip: int = 0
    rescale: bool = False
    resolution: float | None = None
    phi_resolution: float | None = None
    level: float = 0.95
    stat: str = "ks"
    arity: int = 2
    out: str = "uniradar-out"
    formats: str = "json,csv,svg"
    table: str | None = None
    replicates: int = 10_000
    n_values: str = "1-100"

    def __post_init__(self):
        if self.subcommand in ("radar", "gn") and bool(self.input) == bool(self.gen):
            raise ValueError("exactly one of --input and --gen is required")
        if not 0.0 < self.level < 1.0:
            raise ValueError("--level must lie strictly between 0 and 1")
        bad = [f for f in self.format_list if f not in _FORMATS]
        if bad:
            raise ValueError(f"unknown output formats: {bad}")

    @property
    def format_list(self):
        return [f.strip() for f in self.formats.split(",") if f.strip()]

    def to_manifest(self) -> dict:
        # the artifact directory is wherever the manifest sits, so it is not
        # part of the recorded configuration; reruns may redirect it freely
        config = dataclasses.asdict(self)
        config.pop("out")
        return {"tool": "uniradar", "version": __version__, "config": config}

    @classmethod
    def from_manifest(cls, manifest: dict) -> "RunConfig":
        return cls(**manifest["config"])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_ERROR
    try:
        if args.command == "rerun":
            with open(args.manifest) as fh:
                config = RunConfig.from_manifest(json.load(fh))
            if args.out:
                config.out = args.out
        else:
            config = _config_from_args(args)
        runner = {"radar": cmd_radar, "gn": cmd_gn, "gn-table": cmd_gn_table}[config.subcommand]
        return runner(config)
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def cmd_radar(config: RunConfig) -> int:
    """Scan a design in every direction and write scans plus figures."""
    design = _make_design(config)
    out = _prepare_out(config)
    rejected = False
    if design.dim == 2:
        rejected = _run_radar2d(design, config, out)
    elif design.dim == 3 and config.arity != 2:
        rejected = _run_radar3d(design, config, out)
    else:
        rejected = _run_subspaces(design, config, out)
    return EXIT_REJECT if rejected else EXIT_OK


def cmd_gn(config: RunConfig) -> int:
    """Compute the scan ratio of a planar design and judge it against a table."""
    design = _make_design(config)
    out = _prepare_out(config)
    step = config.resolution if config.resolution is not None else 1.0
    result = gn(design, step_deg=step)
    table = GnQuantileTable.load(config.table) if config.table else load_default_table()
    threshold = table.threshold(design.n, config.level)
    rejected = result.g > threshold
    verdict = "reject" if rejected else "accept"
    print(f"g = {result.g:.4f}  (sup {result.sup_value:.4f} at "
          f"{_deg(result.sup_theta):.1f} deg, inf {result.inf_value:.4f} at "
          f"{_deg(result.inf_theta):.1f} deg)")
    print(f"threshold at level {config.level:g} for n={design.n}: {threshold:.4f}")
    print(f"verdict: {verdict}")
    if "json" in config.format_list:
        payload = {
            "g": result.g, "sup_value": result.sup_value, "inf_value": result.inf_value,
            "sup_theta_deg": _deg(result.sup_theta), "inf_theta_deg": _deg(result.inf_theta),
            "n": design.n, "level": config.level, "threshold": threshold,
            "verdict": verdict,
        }
        _write(out / "gn.json", json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return EXIT_REJECT if rejected else EXIT_OK


def cmd_gn_table(config: RunConfig) -> int:
    """Simulate a scan-ratio quantile table and write it with its metadata."""
    out = _prepare_out(config)
    step = config.resolution if config.resolution is not None else 1.0
    table = gn_table(_parse_n_values(config.n_values), replicates=config.replicates,
                     step_deg=step, seed=config.seed)
    table.save(out / "gn_table.csv", out / "gn_table.meta.json")
    print(f"wrote {out / 'gn_table.csv'} ({len(table.n_values)} sizes, "
          f"{table.replicates} replicates)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uniradar",
                                     description="Directional uniformity testing "
                                                 "for space-filling designs")
    sub = parser.add_subparsers(dest="command")

    radar_p = sub.add_parser("radar", help="scan a design in all directions")
    _add_input_options(radar_p)
    radar_p.add_argument("--resolution", type=float, default=None,
                         help="angle step in degrees (default 0.5 for 2-D, 2 for 3-D)")
    radar_p.add_argument("--phi-resolution", type=float, default=None,
                         help="latitude step in degrees for 3-D scans")
    radar_p.add_argument("--stat", choices=("ks", "cvm"), default="ks")
    radar_p.add_argument("--arity", type=int, choices=(2, 3), default=2,
                         help="subspace size when scanning designs with d > 3")
    _add_output_options(radar_p)

    gn_p = sub.add_parser("gn", help="scan-ratio verdict for a planar design")
    _add_input_options(gn_p)
    gn_p.add_argument("--resolution", type=float, default=None,
                      help="angle step in degrees (default 1)")
    gn_p.add_argument("--table", default=None,
                      help="quantile table CSV (default: bundled table)")
    _add_output_options(gn_p)

    table_p = sub.add_parser("gn-table", help="simulate a scan-ratio quantile table")
    table_p.add_argument("--n-values", default="1-100",
                         help="design sizes, e.g. '2,10,50' or '1-100'")
    table_p.add_argument("--replicates", type=int, default=10_000)
    table_p.add_argument("--resolution", type=float, default=None,
                         help="angle step in degrees (default 1)")
    table_p.add_argument("--seed", type=int, default=42)
    _add_output_options(table_p)

    rerun_p = sub.add_parser("rerun", help="replay a run from its manifest")
    rerun_p.add_argument("manifest")
    rerun_p.add_argument("--out", default=None, help="redirect artifacts to this directory")
    return parser


def _add_input_options(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="design CSV, one point per row")
    src.add_argument("--gen", choices=_GENERATORS, help="generate the design instead")
    p.add_argument("--n", type=int, default=100, help="points to generate")
    p.add_argument("--d", type=int, default=2, help="dimension for --gen uniform")
    p.add_argument("--dims", default="", help="1-based coordinate indices for --gen halton")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--skip", type=int, default=0, help="sequence offset for --gen halton")
    p.add_argument("--rescale", action="store_true",
                   help="map observed per-column ranges onto [-1, 1] when loading CSV")
    p.add_argument("--level", type=float, default=0.95)


def _add_output_options(p):
    p.add_argument("--out", default="uniradar-out", help="artifact directory")
    p.add_argument("--formats", default="json,csv,svg",
                   help="comma-separated subset of json,csv,svg")


def _config_from_args(args) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    values = {k.replace("-", "_"): v for k, v in vars(args).items() if k != "command"}
    values = {k: v for k, v in values.items() if k in fields and v is not None}
    # argparse turns absent optionals into None; RunConfig defaults cover those
    return RunConfig(subcommand=args.command, **values)


def _make_design(config: RunConfig) -> Design:
    if config.input:
        return load_csv(config.input, rescale=config.rescale)
    if config.gen == "uniform":
        return gen_uniform(config.n, config.d, config.seed)
    if config.gen == "halton":
        dims = [int(tok) for tok in config.dims.split(",") if tok.strip()]
        if not dims:
            raise ValueError("--gen halton needs --dims, e.g. --dims 14,15")
        return gen_halton(config.n, dims, skip=config.skip)
    if config.gen == "oa49":
        return gen_linear_oa49()
    raise ValueError(f"unknown generator {config.gen!r}")


def _prepare_out(config: RunConfig) -> Path:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = json.dumps(config.to_manifest(), sort_keys=True, indent=2) + "\n"
    _write(out / "manifest.json", manifest)
    return out


def _run_radar2d(design: Design, config: RunConfig, out: Path) -> bool:
    step = config.resolution if config.resolution is not None else DEFAULT_STEP_2D
    scan = radar2d(design, step_deg=step, level=config.level, kind=config.stat)
    formats = config.format_list
    if "json" in formats:
        _write(out / "scan_2d.json", scan.to_json() + "\n")
    if "csv" in formats:
        _write(out / "scan_2d.csv", scan.to_csv())
    if "svg" in formats:
        spec = FigureSpec(title=design.label or "planar scan")
        _write(out / "radar_2d.svg", plot_radar2d(scan, spec))
        _write(out / "design_2d.svg", plot_design2d(design, spec))
    _report_scan(scan.rejected, float(scan.values.max()), scan.critical)
    return scan.rejected


def _run_radar3d(design: Design, config: RunConfig, out: Path) -> bool:
    step = config.resolution if config.resolution is not None else DEFAULT_STEP_3D
    phi_step = config.phi_resolution if config.phi_resolution is not None else step
    scan = radar3d(design, theta_step_deg=step, phi_step_deg=phi_step, level=config.level)
    formats = config.format_list
    if "json" in formats:
        _write(out / "scan_3d.json", scan.to_json() + "\n")
    if "csv" in formats:
        _write(out / "scan_3d.csv", scan.to_csv())
    if "svg" in formats:
        spec = FigureSpec(title=design.label or "spatial scan")
        _write(out / "radar_3d_heatmap.svg", plot_radar3d_heatmap(scan, spec))
        _write(out / "radar_3d_pins.svg", plot_radar3d_pins(scan, spec))
    _report_scan(scan.rejected, float(scan.values.max()), scan.critical)
    return scan.rejected


def _run_subspaces(design: Design, config: RunConfig, out: Path) -> bool:
    results = scan_subspaces(design, arity=config.arity, step_deg=config.resolution,
                             level=config.level)
    formats = config.format_list
    summary = []
    any_rejected = False
    for dims, scan, rejected in results:
        tag = "_".join(str(k) for k in dims)
        summary.append({"dims": list(dims), "max_value": float(scan.values.max()),
                        "critical": scan.critical, "rejected": rejected})
        if rejected:
            any_rejected = True
            if "json" in formats:
                _write(out / f"scan_{tag}.json", scan.to_json() + "\n")
            if "csv" in formats:
                _write(out / f"scan_{tag}.csv", scan.to_csv())
            if "svg" in formats and config.arity == 2:
                spec = FigureSpec(title=f"coordinates ({', '.join(str(k) for k in dims)})")
                _write(out / f"radar_{tag}.svg", plot_radar2d(scan, spec))
    _write(out / "subspace_summary.json",
           json.dumps({"arity": config.arity, "level": config.level, "scans": summary},
                      sort_keys=True, indent=2) + "\n")
    lines = ["dims,max_value,critical,rejected"]
    for item in summary:
        lines.append("%s,%.17g,%.17g,%s" % ("-".join(str(k) for k in item["dims"]),
                                            item["max_value"], item["critical"],
                                            str(item["rejected"]).lower()))
    _write(out / "subspace_summary.csv", "\n".join(lines) + "\n")
    n_rej = sum(1 for item in summary if item["rejected"])
    print(f"{len(summary)} subspace scans, {n_rej} rejected")
    return any_rejected


def _report_scan(rejected: bool, max_value: float, critical: float):
    verdict = "reject" if rejected else "accept"
    print(f"max value {max_value:.4f} vs critical {critical:.4f}: {verdict}")


def _parse_n_values(text: str):
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "-" in token:
            lo, hi = token.split("-", 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(token))
    if not values:
        raise ValueError(f"no design sizes in {text!r}")
    return values


def _write(path: Path, content: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(content)


def _deg(rad: float) -> float:
    return math.degrees(rad)


if __name__ == "__main__":
    sys.exit(main())
