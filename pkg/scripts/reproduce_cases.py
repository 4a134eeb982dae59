#!/usr/bin/env python3
"""Run the two standard heterogeneity cases (case 1: m=0.1, alpha=5;
case 2: m=0.2, alpha=3) for EACP and SEP over a seed list, print the
aggregate comparison table, and emit per-case CSVs and charts.

Usage: python scripts/reproduce_cases.py [--seeds N] [--out-dir DIR]
"""
import argparse
import sys
from pathlib import Path

from eacpsim import SimConfig, export_rounds, render_plots, run_simulation
from eacpsim.metrics import aggregate_runs

CASES = {
    "case1": {"m_frac": 0.1, "alpha": 5.0},
    "case2": {"m_frac": 0.2, "alpha": 3.0},
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=30)
    parser.add_argument("--out-dir", default="out-cases")
    args = parser.parse_args(argv)
    out_root = Path(args.out_dir)

    for case, kw in CASES.items():
        print(f"\n=== {case}: m={kw['m_frac']}, alpha={kw['alpha']} "
              f"({args.seeds} seeds) ===")
        case_dir = out_root / case
        plot_series = {}
        aggregates = {}
        for proto in ("eacp", "sep"):
            summaries = []
            for seed in range(args.seeds):
                cfg = SimConfig(protocol=proto, seed=seed, **kw)
                records, summary = run_simulation(cfg)
                summaries.append(summary)
                if seed == 0:
                    run_dir = case_dir / proto
                    run_dir.mkdir(parents=True, exist_ok=True)
                    export_rounds(records, run_dir / "rounds.csv")
                    plot_series[proto] = records
            aggregates[proto] = aggregate_runs(summaries)
        render_plots(plot_series, case_dir / "plots", deployed=100)

        header = f"{'':8s} {'fnd':>12s} {'hnd':>12s} {'lnd':>12s} {'msgs_to_bs':>14s}"
        print(header)
        for proto, agg in aggregates.items():
            row = "  ".join(
                f"{agg[m].mean:8.0f}±{agg[m].stddev:<5.0f}"
                for m in ("fnd", "hnd", "lnd")
            )
            print(f"{proto:8s} {row}  {agg['total_msgs_to_bs'].mean:12.0f}")
        eacp, sep = aggregates["eacp"], aggregates["sep"]
        print(
            f"gain     stability {100 * (eacp['fnd'].mean / sep['fnd'].mean - 1):+.1f}%"
            f"   lifetime {100 * (eacp['lnd'].mean / sep['lnd'].mean - 1):+.1f}%"
            f"   throughput {100 * (eacp['total_msgs_to_bs'].mean / sep['total_msgs_to_bs'].mean - 1):+.1f}%"
        )
    print(f"\nwrote CSVs and charts under {out_root}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
