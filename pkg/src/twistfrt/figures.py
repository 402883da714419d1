"""Plots for the confluence report (matplotlib, non-interactive backend)."""

from __future__ import annotations

from pathlib import Path


def plot_normal_word_counts(series, path, reference=None):
    """Normal words per degree for each rewrite system, log scale.

    ``series`` maps a label to counts indexed by degree; ``reference`` is
    drawn dashed (the commutative count for the matrix generators).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.0, 3.6), dpi=120)
    for label, counts in series.items():
        ax.plot(range(len(counts)), counts, marker="o", lw=1.5, label=label)
    if reference is not None:
        ax.plot(range(len(reference)), reference, ls="--", color="0.4", lw=1, label="commutative")
    ax.set_yscale("log")
    ax.set_xlabel("degree")
    ax.set_ylabel("normal words")
    ax.set_xticks(range(max(len(c) for c in series.values())))
    ax.grid(alpha=0.3, which="both")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path
