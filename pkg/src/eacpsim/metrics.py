"""Lifetime metrics, multi-seed aggregation and the round-table CSV format."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

from .engine import RoundRecord

CSV_COLUMNS = (
    "round", "alive_normal", "alive_advanced", "alive_total", "ch_count",
    "sleeping", "residual_total_j", "msgs_to_ch", "msgs_to_bs", "msgs_relayed",
)


@dataclass(frozen=True)
class Summary:
    """Death rounds and throughput totals for one run.

    fnd / hnd / lnd are the first rounds at which the alive count drops
    below the deployed count, to at most half of it, and to zero.  When a
    crossing never happens within the simulated horizon the metric reports
    rounds_simulated and the summary is flagged censored.
    """

    fnd: int
    hnd: int
    lnd: int
    total_msgs_to_bs: int
    total_msgs_to_ch: int
    total_relayed: int
    rounds_simulated: int
    censored: bool = False


_METRIC_FIELDS = tuple(
    f.name for f in fields(Summary) if f.name != "censored"
)


def summarize(records: Sequence[RoundRecord], deployed: int) -> Summary:
    """Compute the Summary for one run's record sequence.

    Records must be non-empty with consecutive rounds starting at 1.
    Half-death uses alive <= floor(deployed / 2).  Throughput totals come
    from the final record's cumulative counters.
    """
    if not records:
        raise ValueError("cannot summarize an empty record list")
    for i, rec in enumerate(records):
        if rec.round != i + 1:
            raise ValueError("records must cover consecutive rounds from 1")
    last = records[-1]
    n_rounds = last.round
    fnd = hnd = lnd = None
    half = deployed // 2
    for rec in records:
        a = rec.alive_total
        if fnd is None and a < deployed:
            fnd = rec.round
        if hnd is None and a <= half:
            hnd = rec.round
        if lnd is None and a == 0:
            lnd = rec.round
            break
    censored = lnd is None
    return Summary(
        fnd=fnd if fnd is not None else n_rounds,
        hnd=hnd if hnd is not None else n_rounds,
        lnd=lnd if lnd is not None else n_rounds,
        total_msgs_to_bs=last.msgs_to_bs,
        total_msgs_to_ch=last.msgs_to_ch,
        total_relayed=last.msgs_relayed,
        rounds_simulated=n_rounds,
        censored=censored,
    )


@dataclass(frozen=True)
class MetricStats:
    mean: float
    stddev: float
    min: float
    max: float


@dataclass(frozen=True)
class AggregateSummary:
    """Elementwise statistics over per-seed summaries (population stddev)."""

    n_runs: int
    stats: dict[str, MetricStats]
    censored_runs: int

    def __getitem__(self, metric: str) -> MetricStats:
        return self.stats[metric]


def aggregate_runs(summaries: Sequence[Summary]) -> AggregateSummary:
    """Mean / population-stddev / min / max per metric across runs.

    Permutation invariant; a single run aggregates to itself with zero
    spread.
    """
    if not summaries:
        raise ValueError("cannot aggregate an empty summary list")
    stats = {}
    for name in _METRIC_FIELDS:
        values = [float(getattr(s, name)) for s in summaries]
        mean = sum(values) / len(values)
        var = sum((v - mean) ** 2 for v in values) / len(values)
        stats[name] = MetricStats(
            mean=mean, stddev=math.sqrt(var), min=min(values), max=max(values)
        )
    return AggregateSummary(
        n_runs=len(summaries),
        stats=stats,
        censored_runs=sum(1 for s in summaries if s.censored),
    )


def export_rounds(records: Iterable[RoundRecord], destination) -> None:
    """Write records as CSV with the fixed column order above.

    The residual-energy column uses repr() so values round-trip exactly;
    equal data always produces byte-identical files.  `destination` may be
    a path or an open text file.
    """
    rows = (
        (
            rec.round, rec.alive_normal, rec.alive_advanced, rec.alive_total,
            rec.ch_count, rec.sleeping, repr(rec.residual_total),
            rec.msgs_to_ch, rec.msgs_to_bs, rec.msgs_relayed,
        )
        for rec in records
    )
    if hasattr(destination, "write"):
        writer = csv.writer(destination, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(rows)
        return
    with open(destination, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(rows)


def read_rounds(source) -> list[RoundRecord]:
    """Parse a CSV produced by export_rounds back into records."""
    if hasattr(source, "read"):
        reader = csv.reader(source)
        rows = list(reader)
    else:
        with open(source, newline="") as fh:
            rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError(f"{source}: missing or unexpected header row")
    records = []
    for row in rows[1:]:
        if not row:
            continue
        records.append(
            RoundRecord(
                round=int(row[0]),
                alive_normal=int(row[1]),
                alive_advanced=int(row[2]),
                ch_count=int(row[4]),
                sleeping=int(row[5]),
                residual_total=float(row[6]),
                msgs_to_ch=int(row[7]),
                msgs_to_bs=int(row[8]),
                msgs_relayed=int(row[9]),
            )
        )
    return records
