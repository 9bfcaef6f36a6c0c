"""Render sweep, comparison and time-trace figures to image files.

Figures are a convenience layer over the delimited output: the same arrays
that go into the CSV/JSON stream are drawn with matplotlib and written to
the requested path.  PNG metadata is pinned so identical runs produce
identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import SweepSeries

_PNG_METADATA = {"Software": "intraent"}


def _save(fig, path: str) -> None:
    kwargs = {}
    if str(path).lower().endswith(".png"):
        kwargs["metadata"] = _PNG_METADATA
    fig.savefig(path, dpi=150, bbox_inches="tight", **kwargs)
    plt.close(fig)


def plot_sweep(series: SweepSeries, path: str) -> None:
    """Concurrence against channel strength, numeric and analytic curves."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(series.p_values, series.c_numeric, label="numeric", lw=1.8)
    if series.c_analytic is not None:
        ax.plot(series.p_values, series.c_analytic, "--", label="closed form", lw=1.2)
    ax.set_xlabel("channel strength P")
    ax.set_ylabel("concurrence")
    ax.set_title(f"{series.kind.value} / {series.locality.value}")
    ax.set_ylim(bottom=0.0)
    ax.grid(alpha=0.3)
    ax.legend()
    _save(fig, path)


def plot_compare(intra: SweepSeries, inter: SweepSeries, path: str) -> None:
    """Intraparticle vs interparticle concurrence on a shared grid."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(intra.p_values, intra.c_numeric, label="intraparticle", lw=1.8)
    ax.plot(inter.p_values, inter.c_numeric, "--", label="interparticle", lw=1.8)
    ax.set_xlabel("channel strength P")
    ax.set_ylabel("concurrence")
    ax.set_title(f"{intra.kind.value}: intra vs inter")
    ax.set_ylim(bottom=0.0)
    ax.grid(alpha=0.3)
    ax.legend()
    _save(fig, path)


def plot_nonmarkov(times: np.ndarray, strengths: np.ndarray,
                   concurrences: np.ndarray, path: str) -> None:
    """Time traces of the oscillatory strength P(t) and the concurrence."""
    fig, (ax_p, ax_c) = plt.subplots(2, 1, figsize=(6.0, 5.5), sharex=True)
    ax_p.plot(times, strengths, lw=1.5)
    ax_p.set_ylabel("P(t)")
    ax_p.grid(alpha=0.3)
    ax_c.plot(times, concurrences, lw=1.5, color="tab:red")
    ax_c.set_xlabel("t")
    ax_c.set_ylabel("concurrence")
    ax_c.grid(alpha=0.3)
    _save(fig, path)
