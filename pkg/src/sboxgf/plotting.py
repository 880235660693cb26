"""Figures for the ``analyze`` report: DDT, Walsh spectrum, bit-planes."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analysis import ddt, walsh_spectrum  # noqa: E402
from .bcn import output_bcns, unpack_plane  # noqa: E402
from .sbox import SBox  # noqa: E402


def savefig(fig, filename, tight=True):
    if tight:
        fig.savefig(filename, dpi=150, bbox_inches="tight", pad_inches=0.1)
    else:
        fig.savefig(filename, dpi=150, pad_inches=0.1)
    plt.close(fig)


def plot_ddt(sbox: SBox, ax=None):
    table = ddt(sbox)
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 4.5))
    im = ax.imshow(table, cmap="viridis", interpolation="nearest", origin="upper")
    ax.set_xlabel(r"output difference $\Delta y$")
    ax.set_ylabel(r"input difference $\Delta x$")
    ax.set_title(f"DDT, max (dx!=0) = {table[1:].max()}")
    ax.figure.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    return ax


def plot_walsh(sbox: SBox, ax=None):
    w = np.abs(walsh_spectrum(sbox))
    w[0] = 0
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 4.5))
    im = ax.imshow(w, cmap="magma", interpolation="nearest", origin="upper")
    ax.set_xlabel("input mask a")
    ax.set_ylabel("output mask b")
    ax.set_title("|Walsh coefficient|")
    ax.figure.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    return ax


def plot_planes(sbox: SBox, ax=None):
    planes = output_bcns(sbox)
    img = np.vstack([unpack_plane(b.value, sbox.size) for b in planes])
    if ax is None:
        _, ax = plt.subplots(figsize=(max(4, sbox.size / 16), 0.4 * sbox.n + 1))
    ax.imshow(img, cmap="Greys", aspect="auto", interpolation="nearest")
    ax.set_yticks(range(sbox.n))
    ax.set_yticklabels([f"plane {b.plane}" for b in planes])
    ax.set_xlabel("S-box index")
    ax.set_title("output bit-planes")
    return ax


def render_report_figures(sbox: SBox, out_dir, prefix: str = "sbox") -> list[Path]:
    """Write the DDT, Walsh and bit-plane figures as PNGs; return the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, fn in (("ddt", plot_ddt), ("walsh", plot_walsh), ("planes", plot_planes)):
        ax = fn(sbox)
        path = out_dir / f"{prefix}_{name}.png"
        savefig(ax.figure, path)
        paths.append(path)
    return paths
