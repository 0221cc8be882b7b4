"""Figure rendering for series reports and catalog scans."""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .series import SeriesReport


def save_series_figure(report: SeriesReport, path: str) -> str:
    """Render the dimension decay of both Lie power chains to a PNG."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    lower = list(report.lower_dims)
    upper = list(report.upper_dims)
    ax.step(range(1, len(lower) + 1), lower, where="post",
            marker="o", label="lower chain dim")
    ax.step(range(1, len(upper) + 1), upper, where="post",
            marker="s", label="upper chain dim")
    ax.axvline(report.t_lower, color="tab:blue", linestyle=":", alpha=0.7,
               label=f"t_lower = {report.t_lower}")
    if report.t_upper != report.t_lower:
        ax.axvline(report.t_upper, color="tab:orange", linestyle=":", alpha=0.7,
                   label=f"t_upper = {report.t_upper}")
    ax.set_xlabel("weight n")
    ax.set_ylabel("dimension")
    ax.set_title(f"{report.group_name}, p = {report.p}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_scan_figure(rows: list, path: str) -> str:
    """Scatter t_lower against |G'| for every scanned (group, prime) pair.

    Rows are scan report dicts; pairs without a computed index are skipped.
    The maximal index |G'| + 1 and the almost-maximal index |G'| - p + 2
    are drawn as reference curves for each prime present.
    """
    rows = [r for r in rows if r.get("t_lower") is not None]
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    primes = sorted({r["p"] for r in rows})
    for p in primes:
        xs = [r["gamma_orders"][1] for r in rows if r["p"] == p]
        ys = [r["t_lower"] for r in rows if r["p"] == p]
        ax.scatter(xs, ys, label=f"p = {p}", alpha=0.8)
    if rows:
        span = sorted({r["gamma_orders"][1] for r in rows})
        ax.plot(span, [d + 1 for d in span], "k--", alpha=0.5,
                label="maximal |G'|+1")
        for p in primes:
            ax.plot(span, [max(d - p + 2, 0) for d in span], ":", alpha=0.5,
                    label=f"almost maximal, p={p}")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("|G'|")
    ax.set_ylabel("t_lower")
    ax.set_title("Lie nilpotency index against derived subgroup order")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def figure_path(directory: str, name: str, p: int) -> str:
    safe = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in name)
    return os.path.join(directory, f"{safe}_p{p}_series.png")
