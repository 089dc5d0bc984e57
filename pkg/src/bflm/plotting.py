"""Matplotlib rendering of the report outputs, written next to the CSVs.

All figures go straight to files through the Agg backend; nothing here
opens a window.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_curves", "render_regions", "render_trajectory"]

_KIND_LABELS = {
    "ip": "IP",
    "iph": "IPH",
    "zs": "ZS",
    "fs": "FS",
    "l": "L",
    "cg": "CG",
    "b": "B",
    "robust": "robust",
}


def render_curves(bstats, columns, n, p, path) -> None:
    """Posterior null-probability curves, one line per kind."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for tag, values in columns.items():
        ax.plot(bstats, values, label=_KIND_LABELS.get(tag, tag), linewidth=1.6)
    ax.set_xlabel("residual fraction of the full fit")
    ax.set_ylabel("posterior probability of the null model")
    ax.set_title(f"n = {n}, p = {p}")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_regions(rs, deltas, membership, boundaries, path) -> None:
    """Inconsistency regions as filled areas with their boundary curves."""
    tags = list(membership)
    cols = 2 if len(tags) > 1 else 1
    rows = math.ceil(len(tags) / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(5.5 * cols, 4.0 * rows), squeeze=False)
    for idx, tag in enumerate(tags):
        ax = axes[idx // cols][idx % cols]
        mask = np.asarray(membership[tag], dtype=float)
        ax.contourf(
            rs, deltas, mask.T, levels=[0.5, 1.5], colors=["#c44e52"], alpha=0.45
        )
        boundary = boundaries.get(tag)
        if boundary is not None:
            finite = np.isfinite(boundary)
            ax.plot(np.asarray(rs)[finite], np.asarray(boundary)[finite],
                    color="#c44e52", linewidth=1.6)
        ax.set_title(_KIND_LABELS.get(tag, tag))
        ax.set_xlabel("r (limit of n / p)")
        ax.set_ylabel("delta")
        ax.set_xlim(float(np.min(rs)), float(np.max(rs)))
        ax.set_ylim(float(np.min(deltas)), float(np.max(deltas)))
    for idx in range(len(tags), rows * cols):
        axes[idx // cols][idx % cols].set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_trajectory(result, path) -> None:
    """Median log Bayes factor across n with the 10-90% band."""
    ns = [point.n for point in result.trajectory]
    median = [point.median_log_bf for point in result.trajectory]
    q10 = [point.q10 for point in result.trajectory]
    q90 = [point.q90 for point in result.trajectory]
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.fill_between(ns, q10, q90, alpha=0.25, label="10-90% band")
    ax.plot(ns, median, marker="o", label="median")
    ax.axhline(0.0, color="gray", linewidth=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("sample size n")
    ax.set_ylabel("log Bayes factor")
    kind = result.spec.kind.tag
    ax.set_title(
        f"{_KIND_LABELS.get(kind, kind)} under {result.spec.truth.value} sampling"
    )
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
