"""Figure rendering for sweep results.

One entry point, :func:`render`, picks a layout from the shape of the
sweep: line plots for one or a few series, heatmaps when a parameter is
swept densely (Werner mixing, pulse interval, reservoir parameters).
Figures are written straight to file with the Agg backend; no display is
required.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweep import SweepResult

__all__ = ["render"]

_DPI = 150


def _finish(fig, path: str) -> str:
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def _lines_single(result: SweepResult, path: str) -> str:
    s = result.series[0]
    fig, ax = plt.subplots(figsize=(7.0, 4.5), layout="constrained")
    ax.plot(s.times, s.mutual_info, label="mutual information I")
    ax.plot(s.times, s.classical, label="classical correlation C")
    ax.plot(s.times, s.discord, label="quantum discord Q")
    ax.plot(s.times, s.concurrence, label="concurrence")
    ax.plot(s.times, s.q1, ls="--", lw=0.9, alpha=0.7, label="branch Q1")
    ax.plot(s.times, s.q2, ls=":", lw=0.9, alpha=0.7, label="branch Q2")
    for t in s.events.sudden_changes:
        ax.axvline(t, color="0.45", ls=":", lw=0.8)
    if s.events.esd.time is not None:
        ax.axvline(s.events.esd.time, color="tab:red", ls=":", lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("correlations")
    ax.set_title(f"correlation dynamics ({s.label})")
    ax.legend(fontsize=8)
    return _finish(fig, path)


def _lines_multi(result: SweepResult, path: str) -> str:
    fig, axes = plt.subplots(2, 2, figsize=(10.0, 7.0), layout="constrained")
    panels = [
        ("population P", "population"),
        ("quantum discord Q", "discord"),
        ("classical correlation C", "classical"),
        ("concurrence", "concurrence"),
    ]
    for ax, (title, attr) in zip(axes.flat, panels):
        for s in result.series:
            ax.plot(s.times, getattr(s, attr), label=s.label, lw=1.1)
        ax.set_title(title)
        ax.set_xlabel("t")
    axes.flat[0].legend(fontsize=8)
    return _finish(fig, path)


def _heatmap_panels(result: SweepResult, path: str, series, yvals, ylabel, panels):
    t = series[0].times
    fig, axes = plt.subplots(
        1, len(panels), figsize=(4.6 * len(panels), 4.0), layout="constrained"
    )
    if len(panels) == 1:
        axes = [axes]
    for ax, (title, attr) in zip(axes, panels):
        z = np.vstack([getattr(s, attr) for s in series])
        mesh = ax.pcolormesh(t, yvals, z, shading="auto", cmap="viridis")
        fig.colorbar(mesh, ax=ax)
        ax.set_title(title)
        ax.set_xlabel("t")
        ax.set_ylabel(ylabel)
    return _finish(fig, path)


def render(result: SweepResult, path: str) -> str:
    """Render ``result`` to an image file at ``path`` and return the path."""
    sweep = result.config.sweep_name()
    if sweep == "r":
        yvals = [s.sweep_value for s in result.series]
        return _heatmap_panels(
            result,
            path,
            result.series,
            yvals,
            "Werner r",
            [
                ("mutual information I", "mutual_info"),
                ("classical correlation C", "classical"),
                ("quantum discord Q", "discord"),
            ],
        )
    if sweep in ("lambda_inv", "gamma0_inv"):
        yvals = [s.sweep_value for s in result.series]
        ylabel = "1/lambda" if sweep == "lambda_inv" else "1/gamma0"
        attr = "delta_q" if result.config.delta_q else "discord"
        title = "discord loss dQ" if result.config.delta_q else "quantum discord Q"
        return _heatmap_panels(
            result, path, result.series, yvals, ylabel, [(title, attr)]
        )
    pulsed = [s for s in result.series if s.interval is not None]
    if len(pulsed) >= 5:
        yvals = [s.interval for s in pulsed]
        return _heatmap_panels(
            result,
            path,
            pulsed,
            yvals,
            "pulse interval T",
            [
                ("quantum discord Q", "discord"),
                ("classical correlation C", "classical"),
            ],
        )
    if len(result.series) == 1:
        return _lines_single(result, path)
    return _lines_multi(result, path)
