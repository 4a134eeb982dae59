"""Static SVG charts comparing labeled record series."""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
# keep labels as literal <text> elements so emitted charts stay greppable
matplotlib.rcParams["svg.fonttype"] = "none"

import matplotlib.pyplot as plt

from .engine import RoundRecord
from .metrics import summarize

PLOT_FILES = (
    "alive_nodes.svg",
    "residual_energy.svg",
    "cumulative_messages.svg",
    "death_rounds.svg",
)


def _line_chart(series, out_path, value, ylabel, title, extra=None):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, records in series.items():
        rounds = [rec.round for rec in records]
        ax.plot(rounds, [value(rec) for rec in records], label=label)
        if extra is not None:
            name, getter, style = extra
            ax.plot(rounds, [getter(rec) for rec in records],
                    style, label=f"{label} {name}", alpha=0.7)
    ax.set_xlabel("round")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)


def render_plots(
    series: Mapping[str, Sequence[RoundRecord]],
    out_dir: str | Path,
    deployed: int | None = None,
) -> list[Path]:
    """Emit the four comparison charts, overlaying every labeled series.

    deployed is the node count used for the death-round bars; when omitted
    it is inferred from each series' first record (exact unless a node died
    in round 1).
    """
    if not series:
        raise ValueError("render_plots needs at least one labeled series")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [out_dir / name for name in PLOT_FILES]

    _line_chart(series, paths[0], lambda rec: rec.alive_total,
                "alive nodes", "Alive nodes per round")
    _line_chart(series, paths[1], lambda rec: rec.residual_total,
                "residual energy (J)", "Total residual energy per round")
    _line_chart(series, paths[2], lambda rec: rec.msgs_to_bs,
                "cumulative messages", "Messages delivered to the base station",
                extra=("to CH", lambda rec: rec.msgs_to_ch, "--"))

    # Death-round bars: first / half / last node death per series.
    fig, ax = plt.subplots(figsize=(7, 4.5))
    metrics = ("fnd", "hnd", "lnd")
    width = 0.8 / max(len(series), 1)
    for i, (label, records) in enumerate(series.items()):
        n = deployed if deployed is not None else records[0].alive_total
        summary = summarize(list(records), deployed=n)
        values = [getattr(summary, m) for m in metrics]
        xs = [j + i * width for j in range(len(metrics))]
        bars = ax.bar(xs, values, width=width, label=label)
        ax.bar_label(bars, fmt="%d", fontsize=8)
    ax.set_xticks([j + width * (len(series) - 1) / 2 for j in range(len(metrics))])
    ax.set_xticklabels(["first death", "half dead", "last death"])
    ax.set_ylabel("round")
    ax.set_title("Node-death rounds")
    ax.legend()
    fig.tight_layout()
    fig.savefig(paths[3], format="svg")
    plt.close(fig)
    return paths
