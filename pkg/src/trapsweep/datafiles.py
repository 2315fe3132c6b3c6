"""Columnar text output formats and checksum helpers.

All data files are whitespace-separated columns with '#'-prefixed header
lines carrying `key = value` metadata plus a column list.  Numbers are
written with full round-trip precision so reruns are byte-identical.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

FLOAT_FMT = "%.17g"


def _header_lines(meta: dict, columns: list[str]) -> list[str]:
    lines = [f"# {key} = {value}" for key, value in meta.items()]
    lines.append("# columns: " + "  ".join(columns))
    return lines


def write_columns(path, arrays, columns, meta=None):
    """Write equal-length 1D arrays as whitespace-separated columns."""
    path = Path(path)
    data = np.column_stack([np.asarray(a, dtype=float) for a in arrays])
    header = "\n".join(_header_lines(meta or {}, columns))
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, data, fmt=FLOAT_FMT, header=header, comments="")
    return path


def write_wavefunction(path, psi, meta=None):
    """Snapshot format: x, Re(psi), Im(psi), |psi|^2."""
    amps = psi.amplitudes
    return write_columns(
        path,
        [psi.grid.x, amps.real, amps.imag, np.abs(amps) ** 2],
        ["x", "re_psi", "im_psi", "density"],
        meta,
    )


def write_density(path, grid, density, meta=None):
    return write_columns(path, [grid.x, density], ["x", "density"], meta)


def write_level_scan(path, scan, meta=None):
    info = {"u0": scan.u0, "sigma": scan.sigma}
    info.update(meta or {})
    cols = ["x0"] + [f"E{i}" for i in range(scan.energies.shape[1])]
    arrays = [scan.x0_values] + [scan.energies[:, i] for i in range(scan.energies.shape[1])]
    return write_columns(path, arrays, cols, info)


def write_trajectory(path, traj, populations=None, meta=None):
    """Observables format: t, x0, norm, energy, <x>, then P0, P1, ..."""
    arrays = [traj.times, traj.x0_values, traj.norms, traj.energies, traj.x_mean]
    cols = ["t", "x0", "norm", "energy", "x_mean"]
    if populations is not None:
        populations = np.asarray(populations, dtype=float)
        for i in range(populations.shape[1]):
            arrays.append(populations[:, i])
            cols.append(f"P{i}")
    return write_columns(path, arrays, cols, meta)


def read_columns(path):
    """Load a columnar file back; returns (meta dict, 2D array)."""
    meta = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            elif body.startswith("columns:"):
                meta["columns"] = body.split(":", 1)[1].split()
    return meta, np.loadtxt(path)


def file_sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def checksum_listing(paths, base_dir) -> list[tuple[str, str]]:
    base = Path(base_dir)
    out = []
    for p in sorted(Path(p) for p in paths):
        rel = p.relative_to(base) if p.is_relative_to(base) else p
        out.append((str(rel), file_sha256(p)))
    return out
