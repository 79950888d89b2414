"""Figure-reproduction data and rendered plots.

Two reports are produced: the bound-versus-balance-strength curves (the
diagonal maximum ``n_gamma_max``, dashed, against the symmetric bound
``n_s``, solid) and the four ``n(gamma, tau)`` surfaces at ``alpha`` in
{1, 3/4, 1/2, 1/4} whose maxima all sit on the diagonal ``gamma = tau``.
Each report is written as a delimited data file with a rendered PNG of the
same content next to it.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .bound import _grid, _n_array, diagonal_bound, symmetric_bound
from .errors import ValidationError
from .reporting import render_csv, render_json, atomic_write

SURFACE_ALPHAS = (1.0, 0.75, 0.5, 0.25)

FIG1_HEADER = ["alpha", "n_gamma_max", "n_symmetric"]
SURFACES_HEADER = ["alpha", "gamma", "tau", "n"]

_PNG_METADATA = {"Software": "ucbalance"}


def fig1_rows(grid_step: float) -> list[tuple[float, float, float]]:
    """Rows (alpha, diagonal-maximum bound, symmetric bound) over alpha in [0, 1]."""
    if not 0.0 < grid_step <= 0.1:
        raise ValidationError(f"grid_step must lie in (0, 0.1], got {grid_step}")
    alphas = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
    rows = []
    for alpha in alphas:
        scan = diagonal_bound(float(alpha), grid_step)
        n_sym = symmetric_bound(float(alpha))
        # gamma = 0 is always a scan candidate and its exact value is the
        # symmetric bound; flooring by it keeps n_gamma_max >= n_sym exact.
        rows.append((float(alpha), max(scan.max_value, n_sym), n_sym))
    return rows


def surface_rows(grid_step: float) -> list[tuple[float, float, float, float]]:
    """Rows (alpha, gamma, tau, n) for the four bound surfaces."""
    if not 0.0 < grid_step <= 0.1:
        raise ValidationError(f"grid_step must lie in (0, 0.1], got {grid_step}")
    axis = _grid(grid_step)
    gg, tt = np.meshgrid(axis, axis, indexing="ij")
    rows = []
    for alpha in SURFACE_ALPHAS:
        values = _n_array(alpha, gg, tt)
        for i in range(axis.size):
            for j in range(axis.size):
                rows.append((alpha, float(axis[i]), float(axis[j]), float(values[i, j])))
    return rows


def render_fig1(rows, png_path) -> None:
    alphas = [r[0] for r in rows]
    n_max = [r[1] for r in rows]
    n_sym = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(alphas, n_max, "k--", label=r"$n_\gamma$ (unbias only)")
    ax.plot(alphas, n_sym, "k-", label=r"$n_s$ (unbias + symmetry)")
    ax.axhline(2 * np.sqrt(2), color="0.6", lw=0.8, ls=":")
    ax.set_xlabel(r"balance strength $\alpha$")
    ax.set_ylabel("CHSH upper bound")
    ax.set_xlim(0, 1)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)


def render_surfaces(rows, png_path) -> None:
    fig, axes = plt.subplots(2, 2, figsize=(8, 7), constrained_layout=True)
    for ax, alpha in zip(axes.ravel(), SURFACE_ALPHAS):
        panel = [r for r in rows if r[0] == alpha]
        gammas = sorted({r[1] for r in panel})
        taus = sorted({r[2] for r in panel})
        grid = np.array([r[3] for r in panel]).reshape(len(gammas), len(taus))
        mesh = ax.pcolormesh(taus, gammas, grid, shading="nearest")
        ax.plot([-1, 1], [-1, 1], "w:", lw=0.8)
        ax.set_title(rf"$\alpha = {alpha:g}$")
        ax.set_xlabel(r"$\tau$")
        ax.set_ylabel(r"$\gamma$")
        fig.colorbar(mesh, ax=ax)
    fig.savefig(png_path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)


def emit_figure(which: str, grid_step: float, output_path, fmt: str, meta: dict) -> list[Path]:
    """Write the figure data file and its rendered PNG; returns written paths.

    The PNG lands next to the data file with the same stem.
    """
    output_path = Path(output_path)
    if which == "fig1":
        rows = fig1_rows(grid_step)
        header = FIG1_HEADER
        renderer = render_fig1
    elif which == "sm-surfaces":
        rows = surface_rows(grid_step)
        header = SURFACES_HEADER
        renderer = render_surfaces
    else:
        raise ValidationError(f"unknown figure: {which!r}")
    if fmt == "csv":
        atomic_write(output_path, render_csv(meta, header, rows))
    elif fmt == "json":
        data = {"columns": header, "rows": [list(r) for r in rows]}
        atomic_write(output_path, render_json(meta, data))
    else:
        raise ValidationError(f"unknown output format: {fmt}")
    png_path = output_path.with_suffix(".png")
    renderer(rows, png_path)
    return [output_path, png_path]
