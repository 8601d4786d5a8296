"""Matplotlib renderings of evaluation results (PR curves, confusion
matrices, growth curves), written next to the delimited output files."""

from __future__ import annotations

from pathlib import Path
from typing import Dict, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .metrics.detection import ConfusionMatrix, PRCurve
from .metrics.regression import RegressionEvalReport


def render_pr_curves(curves: Dict[str, PRCurve], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 6))
    for label, curve in sorted(curves.items()):
        ax.plot([0.0, *curve.recall], [1.0, *curve.precision],
                label=f"{label} (AP {curve.ap:.3f})", linewidth=1.5)
    ax.set_xlabel("Recall")
    ax.set_ylabel("Precision")
    ax.set_xlim(0, 1.02)
    ax.set_ylim(0, 1.02)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8, loc="lower left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_confusion_matrix(cm: ConfusionMatrix, labels: Sequence[str],
                            path: Path) -> Path:
    names = [*labels, "background"]
    counts = cm.counts
    fig, ax = plt.subplots(figsize=(8, 7))
    im = ax.imshow(counts, cmap="Blues")
    ax.set_xticks(range(len(names)), names, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(len(names)), names, fontsize=8)
    ax.set_xlabel("Detected class")
    ax.set_ylabel("Ground-truth class")
    vmax = counts.max() if counts.size else 0
    for i in range(counts.shape[0]):
        for j in range(counts.shape[1]):
            if counts[i, j]:
                color = "white" if counts[i, j] > vmax / 2 else "black"
                ax.text(j, i, str(counts[i, j]), ha="center", va="center",
                        color=color, fontsize=7)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_growth_curves(report: RegressionEvalReport, path: Path) -> Path:
    ns = [p.n_included for p in report.growth]
    mses = [p.mse for p in report.growth]
    rho_pts = [(p.n_included, p.spearman) for p in report.growth
               if p.spearman is not None]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))
    ax1.plot(ns, mses, color="tab:red")
    ax1.set_xlabel("Samples included (best first)")
    ax1.set_ylabel("MSE")
    ax1.grid(alpha=0.3)
    if rho_pts:
        ax2.plot([n for n, _ in rho_pts], [r for _, r in rho_pts],
                 color="tab:blue")
    ax2.set_xlabel("Samples included (best first)")
    ax2.set_ylabel("Spearman correlation")
    ax2.set_ylim(-1.05, 1.05)
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)
