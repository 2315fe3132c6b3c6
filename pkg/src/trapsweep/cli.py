"""Command-line entry point.

Subcommands map one-to-one onto the library's top-level operations;
every run writes its data files, a JSON summary where applicable, and a
`manifest.txt` listing each emitted file with its SHA-256 checksum.  A
lock file serializes concurrent runs that target the same directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import config as cfgmod
from . import datafiles
from .analysis import binomial_distribution, ensemble_stats, reduced_density
from .errors import ConfigError, TrapSweepError
from .experiments import reproduce_figures, run_gpe_sweep, run_linear_sweep
from .grid import Grid
from .spectrum import find_avoided_crossing, level_dynamics


@dataclass
class RunManifest:
    """What a run produced: inputs, output directory, files with checksums."""

    subcommand: str
    config_path: str
    output_dir: Path
    files: list

    def write(self) -> Path:
        path = self.output_dir / "manifest.txt"
        lines = [
            f"# subcommand = {self.subcommand}",
            f"# config = {self.config_path}",
        ]
        lines += [f"{digest}  {name}" for name, digest in self.files]
        path.write_text("\n".join(lines) + "\n")
        return path

    def verify(self):
        for name, digest in self.files:
            target = self.output_dir / name
            if not target.exists():
                raise TrapSweepError(f"manifest entry missing on disk: {name}")
            if datafiles.file_sha256(target) != digest:
                raise TrapSweepError(f"checksum mismatch for {name}")


class _OutputLock:
    """Exclusive marker so two runs never interleave in one directory."""

    def __init__(self, out_dir: Path):
        self.path = out_dir / ".trapsweep.lock"

    def __enter__(self):
        try:
            fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise TrapSweepError(
                f"output directory is locked by another run: {self.path}"
            ) from None
        os.close(fd)
        return self

    def __exit__(self, *exc_info):
        self.path.unlink(missing_ok=True)
        return False


def _finish(subcommand, config_path, out_dir, files) -> RunManifest:
    manifest = RunManifest(
        subcommand=subcommand,
        config_path=str(config_path) if config_path else "(none)",
        output_dir=out_dir,
        files=datafiles.checksum_listing(files, out_dir),
    )
    manifest.write()
    manifest.verify()
    return manifest


def _prepare_out(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _parse_scan(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise TrapSweepError(f"scan must look like lo:hi:npoints, got {spec!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def cmd_spectrum(args) -> int:
    cfg = cfgmod.load_config(args.config)
    cfgmod._require(cfg, "potential", ("u0", "sigma"))
    grid = cfgmod.build_grid(cfg)
    scan_cfg = cfg["scan"]
    lo, hi, n_scan = (scan_cfg["x0_min"], scan_cfg["x0_max"], scan_cfg["n_scan"])
    if args.scan:
        lo, hi, n_scan = _parse_scan(args.scan)
    levels = args.levels or scan_cfg["levels"]
    out = _prepare_out(args)
    with _OutputLock(out):
        scan = level_dynamics(grid, cfg["potential"]["u0"], cfg["potential"]["sigma"],
                              (lo, hi), k=levels, n_scan=n_scan)
        path = datafiles.write_level_scan(out / "levels.dat", scan,
                                          {"n_scan": n_scan, "config": args.config})
        _finish("spectrum", args.config, out, [path])
    return 0


def cmd_crossing(args) -> int:
    cfg = cfgmod.load_config(args.config)
    cfgmod._require(cfg, "potential", ("u0", "sigma"))
    grid = cfgmod.build_grid(cfg)
    cr = cfg["crossing"]
    out = _prepare_out(args)
    with _OutputLock(out):
        crossing = find_avoided_crossing(
            grid, cfg["potential"]["u0"], cfg["potential"]["sigma"],
            level_lo=cr["level_lo"], level_hi=cr["level_hi"],
            x0_range=(cr["x0_min"], cr["x0_max"]),
        )
        payload = {
            "x0_star": crossing.x0_star,
            "gap": crossing.gap,
            "mean_spacing": crossing.mean_spacing,
            "narrow": crossing.is_narrow(cr["narrowness_threshold"]),
            "narrowness_threshold": cr["narrowness_threshold"],
            "config_echo": cfg["_text"],
        }
        path = out / "crossing.json"
        path.write_text(json.dumps(payload, indent=2) + "\n")
        _finish("crossing", args.config, out, [path])
    return 0


def _run_sweep(args, runner, subcommand) -> int:
    cfg = cfgmod.load_config(args.config)
    out = _prepare_out(args)
    with _OutputLock(out):
        sweep_config = cfgmod.build_sweep_config(cfg, output_dir=out)
        result = runner(sweep_config)
        _finish(subcommand, args.config, out, result.written_files)
    print(f"p = {result.p:.4g}", file=sys.stdout)
    return 0


def cmd_sweep(args) -> int:
    return _run_sweep(args, run_linear_sweep, "sweep")


def cmd_gpe_sweep(args) -> int:
    return _run_sweep(args, run_gpe_sweep, "gpe-sweep")


def cmd_density(args) -> int:
    grid = Grid()
    if args.config:
        grid = cfgmod.build_grid(cfgmod.load_config(args.config))
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    dens = reduced_density(args.p, args.t, grid)
    datafiles.write_density(out_path, grid, dens, {"p": args.p, "t": args.t})
    return 0


def cmd_stats(args) -> int:
    stats = ensemble_stats(args.p, args.n)
    payload = {
        "n_particles": stats.n_particles,
        "p": args.p,
        "mean_energy": stats.mean_energy,
        "variance_energy": stats.variance_energy,
    }
    print(json.dumps(payload, indent=2))
    if args.out:
        out = _prepare_out(args)
        with _OutputLock(out):
            pmf = binomial_distribution(args.p, args.n)
            files = [
                datafiles.write_columns(out / "distribution.dat",
                                        [range(args.n + 1), pmf], ["k", "probability"],
                                        {"p": args.p, "n_particles": args.n}),
            ]
            summary = out / "stats.json"
            summary.write_text(json.dumps(payload, indent=2) + "\n")
            files.append(summary)
            _finish("stats", None, out, files)
    return 0


def cmd_optimize(args) -> int:
    cfg = cfgmod.load_config(args.config)
    out = _prepare_out(args)
    with _OutputLock(out):
        problem = cfgmod.build_optimization_problem(cfg)
        from .optimize import optimize as run_optimize

        result = run_optimize(problem)
        log_rows = list(zip(*result.log)) if result.log else [[]] * 5
        files = [
            datafiles.write_columns(
                out / "evaluations.dat", log_rows,
                ["eval_index", "u0", "sigma", "velocity", "p"],
                {"budget": problem.budget, "seed": problem.seed},
            )
        ]
        payload = {
            "best_params": result.best_params,
            "best_p_fast": result.best_p,
            "confirmed_p": result.confirmed_p,
            "evaluations": len(result.log),
            "config_echo": cfg["_text"],
        }
        summary = out / "optimize.json"
        summary.write_text(json.dumps(payload, indent=2) + "\n")
        files.append(summary)
        _finish("optimize", args.config, out, files)
    print(f"best p = {result.confirmed_p:.4g} at {result.best_params}")
    return 0


def cmd_figures(args) -> int:
    out = _prepare_out(args)
    with _OutputLock(out):
        kwargs = {}
        if args.config:
            cfg = cfgmod.load_config(args.config)
            kwargs["grid"] = cfgmod.build_grid(cfg)
            kwargs["fig1_positions"] = cfg["figures"]["fig1_x0"]
            kwargs["fig3_p"] = cfg["figures"]["fig3_p"]
        files = reproduce_figures(out, **kwargs)
        _finish("figures", args.config, out, files)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trapsweep",
        description="Collective excitation of a trapped 1D condensate by a swept Gaussian well",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, needs_config=True, needs_out=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if needs_config:
            p.add_argument("--config", required=True, help="INI config file")
        if needs_out:
            p.add_argument("--out", default=f"runs/{name}", help="output directory")
        p.set_defaults(func=func)
        return p

    p = add("spectrum", cmd_spectrum, help="level dynamics scan over the well position")
    p.add_argument("--levels", type=int, default=None, help="number of levels")
    p.add_argument("--scan", default=None, help="x0 scan as lo:hi:npoints")

    add("crossing", cmd_crossing, help="locate the avoided crossing and its gap")
    add("sweep", cmd_sweep, help="non-interacting sweep experiment")
    add("gpe-sweep", cmd_gpe_sweep, help="interacting (cubic) sweep experiment")

    p = sub.add_parser("density", help="analytic beating density profile")
    p.add_argument("--p", type=float, required=True, help="excitation probability")
    p.add_argument("--t", type=float, required=True, help="time in trap units")
    p.add_argument("--out", required=True, help="output data file")
    p.add_argument("--config", default=None, help="optional config for the grid")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("stats", help="N-particle transfer statistics")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None, help="optional output directory")
    p.set_defaults(func=cmd_stats)

    add("optimize", cmd_optimize, help="tune sweep parameters for maximal transfer")

    p = add("figures", cmd_figures, needs_config=False,
            help="regenerate the data files behind the standard figures")
    p.add_argument("--config", default=None, help="optional INI config file")

    return parser


def _join_dash_values(argv, flags=("--scan",)):
    # argparse would mistake a value like "-5:0:200" for an option; fold it
    # into "--flag=value" form before parsing
    out = []
    it = iter(argv)
    for arg in it:
        if arg in flags:
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_dash_values(list(argv)))
    try:
        return args.func(args)
    except TrapSweepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, ConfigError) else 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
