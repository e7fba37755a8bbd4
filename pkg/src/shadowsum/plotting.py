"""Figure rendering for growth series, written next to the CSV output."""

from __future__ import annotations

import math

from .invariants import GrowthSeries


def plot_growth_series(series: GrowthSeries, path) -> None:
    """Render a growth-vs-r panel with the target line and an error
    panel with the log(r)/r envelope fitted from the data."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rs = [rec.r for rec in series.records if rec.growth is not None]
    growth = [rec.growth for rec in series.records if rec.growth is not None]
    errs = [rec.abs_error for rec in series.records if rec.growth is not None]

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.0, 6.4), sharex=True)
    label = f"(k,l)=({series.k},{series.l})"
    ax1.plot(rs, growth, "o-", ms=3.5, lw=1.0, label=f"{series.kind} growth {label}")
    ax1.axhline(series.target, color="crimson", ls="--", lw=1.0, label=f"target {series.target:.4f}")
    ax1.set_ylabel("growth rate")
    ax1.legend(loc="lower right", fontsize=8)
    ax1.grid(alpha=0.3)

    ax2.semilogy(rs, errs, "o-", ms=3.5, lw=1.0, label="|growth - target|")
    if rs:
        c_fit = series.fit_constant()
        env = [c_fit * math.log(r) / r for r in rs]
        ax2.semilogy(rs, env, ls=":", color="gray", lw=1.0, label=f"{c_fit:.2f} log(r)/r")
    ax2.set_xlabel("r")
    ax2.set_ylabel("abs error")
    ax2.legend(loc="upper right", fontsize=8)
    ax2.grid(alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
