"""Matplotlib renderings of run artifacts (headless, deterministic files)."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["convergence_figure", "diversity_figure", "assignment_figure"]

_DPI = 120
# fixed metadata so repeated renders of the same data are byte-identical
_META = {"Software": "batopt"}

_ALGO_COLORS = {"BA": "#1f77b4", "MBA": "#d62728"}


def _save(fig, path):
    fig.savefig(path, dpi=_DPI, metadata=_META)
    plt.close(fig)
    return path


def _yscale_for(values):
    return "log" if min(values) > 0.0 else "linear"


def convergence_figure(histories, objective_name, path):
    """Mean best-fitness-so-far per iteration, one line per algorithm.

    histories maps an algorithm name to a list of per-run history sequences
    (all the same length).
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    floor = []
    for algo in sorted(histories):
        runs = np.asarray(histories[algo], dtype=float)
        mean = runs.mean(axis=0)
        ax.plot(np.arange(1, mean.size + 1), mean,
                label=f"{algo} (mean of {runs.shape[0]})",
                color=_ALGO_COLORS.get(algo))
        floor.append(float(mean.min()))
    ax.set_yscale(_yscale_for(floor))
    ax.set_xlabel("iteration")
    ax.set_ylabel("best fitness")
    ax.set_title(objective_name)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def diversity_figure(series_by_algo, objective_name, path):
    """Exploration/exploitation percentages over iterations per algorithm.

    series_by_algo maps an algorithm name to an object with xpl_percent and
    xpt_percent sequences.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for algo in sorted(series_by_algo):
        series = series_by_algo[algo]
        t = np.arange(1, len(series.xpl_percent) + 1)
        color = _ALGO_COLORS.get(algo)
        ax.plot(t, series.xpl_percent, label=f"{algo} exploration %", color=color)
        ax.plot(t, series.xpt_percent, label=f"{algo} exploitation %",
                color=color, linestyle="--")
    ax.set_xlabel("iteration")
    ax.set_ylabel("percent")
    ax.set_ylim(-2.0, 102.0)
    ax.set_title(f"{objective_name} search balance")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def assignment_figure(histories, oracle_total, path, title="assignment search"):
    """Best total seconds per iteration for each seeded run, with the
    exhaustive optimum drawn as a reference line when known."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, history in histories:
        ax.plot(np.arange(1, len(history) + 1), history, label=label)
    if oracle_total is not None:
        ax.axhline(oracle_total, color="black", linestyle=":",
                   label=f"optimum {oracle_total:g}")
    ax.set_xlabel("iteration")
    ax.set_ylabel("total seconds")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)
