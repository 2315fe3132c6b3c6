"""Reader for the columnar text files the simulation emits."""

from __future__ import annotations

from pathlib import Path

import numpy as np


class FigureDataError(RuntimeError):
    """Missing or malformed input data for a figure."""


def read_columns(path):
    """Parse one data file: returns (meta dict, 2D array).

    Header lines are '#'-prefixed `key = value` pairs plus a `columns:`
    list; the rest is a whitespace-separated numeric table.
    """
    path = Path(path)
    if not path.exists():
        raise FigureDataError(f"required data file is missing: {path}")
    meta = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if body.startswith("columns:"):
                meta["columns"] = body.split(":", 1)[1].split()
            elif "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
    try:
        data = np.loadtxt(path)
    except ValueError as exc:
        raise FigureDataError(f"cannot parse {path}: {exc}") from exc
    if data.ndim == 1:
        data = data[None, :]
    if data.size == 0:
        raise FigureDataError(f"no data rows in {path}")
    return meta, data


def density_from_wavefunction_file(path):
    """x and |psi|^2 columns from a wavefunction snapshot file."""
    meta, data = read_columns(path)
    if data.shape[1] < 4:
        raise FigureDataError(f"{path} is not a wavefunction file (needs 4 columns)")
    return meta, data[:, 0], data[:, 3]
