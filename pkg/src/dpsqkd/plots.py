"""Figure rendering for the CLI report paths.

All functions render straight to a file (headless backend) and return the
path written; nothing is shown interactively.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_DPI = 150


def save_count_distribution(
    weights: np.ndarray, w0: int, path: str | Path
) -> Path:
    """Count distribution with the admitted-count threshold marked."""
    weights = np.asarray(weights)
    w = np.arange(weights.size)
    # Window to the populated region so large-N plots stay readable.
    significant = np.nonzero(weights > weights.max() * 1e-6)[0]
    lo, hi = int(significant.min()), int(significant.max())
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(w[lo : hi + 1], weights[lo : hi + 1], drawstyle="steps-mid")
    ax.axvline(w0, color="tab:red", linestyle="--", label=f"threshold w0 = {w0}")
    ax.set_xlabel("clicks per block w")
    ax.set_ylabel("P(w)")
    ax.set_title("Click-count distribution")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def save_histogram_comparison(
    empirical: np.ndarray, exact: np.ndarray, path: str | Path
) -> Path:
    """Empirical count histogram against the exact binomial."""
    empirical = np.asarray(empirical)
    exact = np.asarray(exact)
    w = np.arange(empirical.size)
    populated = np.nonzero((empirical > 0) | (exact > exact.max() * 1e-6))[0]
    lo, hi = int(populated.min()), int(populated.max())
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(w[lo : hi + 1], empirical[lo : hi + 1], width=0.8, alpha=0.6,
           label="empirical")
    ax.plot(w[lo : hi + 1], exact[lo : hi + 1], "o-", color="tab:red",
            markersize=3, label="exact binomial")
    ax.set_xlabel("clicks per block w")
    ax.set_ylabel("P(w)")
    ax.set_title("Empirical vs exact count distribution")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def save_sweep(
    alphas: np.ndarray,
    rates: np.ndarray,
    alpha_star: float,
    g_star: float,
    path: str | Path,
) -> Path:
    """Asymptotic per-pulse rate over the amplitude sweep with its maximum."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(alphas, rates)
    ax.plot([alpha_star], [g_star], "o", color="tab:red",
            label=f"optimum alpha = {alpha_star:.4f}")
    ax.set_xlabel("amplitude alpha")
    ax.set_ylabel("key bits per pulse")
    ax.set_title("Asymptotic rate vs amplitude")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def save_slack_chart(pairs: list[dict], tolerance: float, path: str | Path) -> Path:
    """Minimum inequality slack per (n, m) against the pass tolerance."""
    labels = [f"({p['n']},{p['m']})" for p in pairs]
    slacks = [p["min_slack"] for p in pairs]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(pairs)), slacks)
    ax.axhline(tolerance, color="tab:red", linestyle="--", label="tolerance")
    ax.set_xticks(range(len(pairs)))
    ax.set_xticklabels(labels, rotation=45)
    ax.set_ylabel("min slack (bits)")
    ax.set_title("Super-subadditivity slack by (n, m)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)
