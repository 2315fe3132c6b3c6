"""INI-style run configuration: schema, parsing, and builders.

Files use `[section]` headers and `key = value` lines.  All physical
quantities are in trap oscillator units.  Unknown sections or keys are
rejected with a message naming the offender and the valid alternatives,
so typos cannot silently fall back to defaults.
"""

from __future__ import annotations

import configparser
import math
from pathlib import Path

from .errors import ConfigError
from .experiments import SweepConfig
from .grid import Grid
from .optimize import OptimizationProblem
from .potential import SweepSchedule
from .propagate import PropagationConfig

_REQUIRED = object()


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.replace(",", " ").split())


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.replace(",", " ").split())


SCHEMA = {
    "grid": {
        "x_min": (float, -12.0),
        "x_max": (float, 12.0),
        "n": (int, 1024),
    },
    "potential": {
        "u0": (float, _REQUIRED),
        "sigma": (float, _REQUIRED),
    },
    "schedule": {
        "x0_start": (float, -5.0),
        "x0_end": (float, 0.0),
        "velocity": (float, _REQUIRED),
    },
    "propagation": {
        "dt": (float, 1e-3),
        "method": (str, "split-step-spectral"),
        "g": (float, 0.0),
        "record_every": (int, 100),
    },
    "analysis": {
        "basis_size": (int, 6),
        "gpe_target_mode": (str, "gpe-odd"),
        "post_sweep_time": (float, 4.0 * math.pi),
        "compute_lz": (_bool, True),
    },
    "scan": {
        "x0_min": (float, -5.0),
        "x0_max": (float, 0.0),
        "levels": (int, 6),
        "n_scan": (int, 201),
    },
    "crossing": {
        "x0_min": (float, -5.0),
        "x0_max": (float, -2.0),
        "level_lo": (int, 0),
        "level_hi": (int, 1),
        "narrowness_threshold": (float, 0.25),
    },
    "optimize": {
        "free": (_str_list, _REQUIRED),
        "budget": (int, 30),
        "seed": (int, 0),
        "u0_min": (float, 0.0),
        "u0_max": (float, 20.0),
        "sigma_min": (float, 0.1),
        "sigma_max": (float, 1.0),
        "velocity_min": (float, 0.01),
        "velocity_max": (float, 1.0),
        "fast_n": (int, 512),
        "fast_dt": (float, 2e-3),
    },
    "figures": {
        "fig1_x0": (_float_list, (-5.0, -4.0, -2.0, -0.3)),
        "fig3_p": (float, 0.97),
    },
}


def load_config(path) -> dict:
    """Parse and validate a config file against the schema.

    Returns a dict of sections; every schema key is present (defaults
    filled in), and the raw file text rides along under ``_text``.
    Sections whose required keys are absent simply stay incomplete-free:
    their presence is checked by the builder that needs them.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    result = {"_text": text, "_path": str(path)}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(
                f"unknown section [{section}]; valid sections: "
                + ", ".join(sorted(SCHEMA))
            )
        spec = SCHEMA[section]
        values = {}
        for key, raw in parser.items(section):
            if key not in spec:
                raise ConfigError(
                    f"unknown key '{key}' in [{section}]; valid keys: "
                    + ", ".join(sorted(spec))
                )
            kind, _ = spec[key]
            try:
                values[key] = kind(raw)
            except ValueError as exc:
                raise ConfigError(
                    f"bad value for '{key}' in [{section}]: {raw!r} ({exc})"
                ) from exc
        result[section] = values

    # Fill defaults for every section that appears (or is fully optional).
    for section, spec in SCHEMA.items():
        values = result.setdefault(section, {})
        for key, (kind, default) in spec.items():
            if key not in values and default is not _REQUIRED:
                values[key] = default
    return result


def _require(cfg: dict, section: str, keys: tuple[str, ...]):
    missing = [k for k in keys if k not in cfg.get(section, {})]
    if missing:
        raise ConfigError(
            f"[{section}] is missing required key(s): " + ", ".join(missing)
        )


def build_grid(cfg: dict) -> Grid:
    grid = cfg["grid"]
    return Grid(grid["x_min"], grid["x_max"], grid["n"])


def build_sweep_config(cfg: dict, output_dir=None) -> SweepConfig:
    _require(cfg, "potential", ("u0", "sigma"))
    _require(cfg, "schedule", ("velocity",))
    schedule = SweepSchedule(
        cfg["schedule"]["x0_start"], cfg["schedule"]["x0_end"],
        cfg["schedule"]["velocity"],
    )
    prop = PropagationConfig(
        schedule=schedule,
        dt=cfg["propagation"]["dt"],
        method=cfg["propagation"]["method"],
        g=cfg["propagation"]["g"],
        record_every=cfg["propagation"]["record_every"],
    )
    analysis = cfg["analysis"]
    return SweepConfig(
        grid=build_grid(cfg),
        u0=cfg["potential"]["u0"],
        sigma=cfg["potential"]["sigma"],
        propagation=prop,
        basis_size=analysis["basis_size"],
        gpe_target_mode=analysis["gpe_target_mode"],
        post_sweep_time=analysis["post_sweep_time"],
        compute_lz=analysis["compute_lz"],
        output_dir=Path(output_dir) if output_dir is not None else None,
        config_text=cfg["_text"],
    )


def build_optimization_problem(cfg: dict) -> OptimizationProblem:
    _require(cfg, "optimize", ("free",))
    _require(cfg, "potential", ("u0", "sigma"))
    _require(cfg, "schedule", ("velocity",))
    opt = cfg["optimize"]
    bounds = {}
    for name in opt["free"]:
        if name not in ("u0", "sigma", "velocity"):
            raise ConfigError(f"cannot optimize over {name!r}; choose from u0, sigma, velocity")
        bounds[name] = (opt[f"{name}_min"], opt[f"{name}_max"])
    fixed = {
        "u0": cfg["potential"]["u0"],
        "sigma": cfg["potential"]["sigma"],
        "velocity": cfg["schedule"]["velocity"],
        "x0_start": cfg["schedule"]["x0_start"],
        "x0_end": cfg["schedule"]["x0_end"],
        "g": cfg["propagation"]["g"],
    }
    return OptimizationProblem(
        bounds=bounds,
        fixed=fixed,
        budget=opt["budget"],
        seed=opt["seed"],
        fast_n=opt["fast_n"],
        fast_dt=opt["fast_dt"],
    )
