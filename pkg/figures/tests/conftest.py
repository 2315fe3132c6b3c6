import numpy as np
import pytest


def write_columns(path, arrays, columns, meta=None):
    header_lines = [f"# {k} = {v}" for k, v in (meta or {}).items()]
    header_lines.append("# columns: " + "  ".join(columns))
    np.savetxt(path, np.column_stack(arrays), fmt="%.17g",
               header="\n".join(header_lines), comments="")
    return path


@pytest.fixture()
def synthetic_data_dir(tmp_path):
    """A minimal but format-complete data directory."""
    x = np.linspace(-6.0, 6.0, 64)
    harmonic = 0.5 * x**2
    for x0 in (-5.0, -4.0, -2.0, -0.3):
        well = harmonic - 8.0 * np.exp(-((x - x0) ** 2) / 0.5)
        write_columns(tmp_path / f"fig1_x0_{x0:+.1f}.dat", [x, well],
                      ["x", "V"], {"x0": x0})
    write_columns(tmp_path / "fig1_harmonic.dat", [x, harmonic], ["x", "V"])

    x0s = np.linspace(-5.0, 0.0, 21)
    write_columns(tmp_path / "fig2_levels.dat",
                  [x0s, 0.5 + 0.01 * x0s, 1.5 - 0.01 * x0s],
                  ["x0", "E0", "E1"], {"u0": 6.4, "sigma": 0.5})

    dx = x[1] - x[0]
    rho = np.exp(-(x**2))
    rho /= rho.sum() * dx
    write_columns(tmp_path / "fig3_analytic_t0.50pi.dat", [x, rho],
                  ["x", "density"], {"p": 0.97, "t": 1.5707963267948966})
    write_columns(tmp_path / "fig3_analytic_t1.00pi.dat", [x, 0.9 * rho + 0.1 / 12.0],
                  ["x", "density"], {"p": 0.97, "t": 3.141592653589793})
    write_columns(tmp_path / "fig3_propagated.dat", [x, rho],
                  ["x", "density"], {"p_measured": 0.97})

    psi = np.sqrt(rho)
    for name in ("fig4_sweep_end.dat", "fig4_half_period.dat"):
        write_columns(tmp_path / name, [x, psi, np.zeros_like(x), rho],
                      ["x", "re_psi", "im_psi", "density"],
                      {"g": -5.0, "t_after_sweep": 0.0})
    return tmp_path
