"""Command-line surface: run / compare / sweep / plot.

Exit codes: 0 on success, 1 for configuration problems (bad flags, bad
config file contents), 2 for I/O failures.
"""
from __future__ import annotations

import argparse
import dataclasses
import itertools
import json
import logging
import sys
from pathlib import Path

from .config import (
    PROTOCOLS, ConfigError, SimConfig, config_from_dict, load_config,
    resolved_dict,
)
from .engine import run_simulation
from .metrics import aggregate_runs, export_rounds, read_rounds
from .plotting import render_plots

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    # Bad command lines are configuration errors (exit 1, not argparse's 2).
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eacpsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="simulate one protocol / seed")
    run_p.add_argument("--config", required=True, help="flat JSON config file")
    run_p.add_argument("--protocol", choices=PROTOCOLS)
    run_p.add_argument("--seed", type=int)
    run_p.add_argument("--out-dir", default="out")

    cmp_p = sub.add_parser("compare", help="run protocols over a shared seed list")
    cmp_p.add_argument("--config", required=True)
    cmp_p.add_argument("--protocols", default="eacp,sep",
                       help="comma-separated protocol list")
    cmp_p.add_argument("--seeds", type=int, default=30,
                       help="number of seeds (base seed comes from the config)")
    cmp_p.add_argument("--out-dir", default="out")

    swp_p = sub.add_parser("sweep", help="cartesian parameter sweep")
    swp_p.add_argument("--config", required=True)
    swp_p.add_argument("--vary", action="append", required=True,
                       metavar="KEY=V1,V2,...",
                       help="config key and its values; repeatable")
    swp_p.add_argument("--seeds", type=int, default=30)
    swp_p.add_argument("--out-dir", default="out")

    plot_p = sub.add_parser("plot", help="charts from exported round CSVs")
    plot_p.add_argument("--in", dest="inputs", nargs="+", required=True)
    plot_p.add_argument("--out-dir", required=True)
    return parser


def _with_overrides(cfg: SimConfig, protocol=None, seed=None) -> SimConfig:
    updates = {}
    if protocol is not None:
        updates["protocol"] = protocol
    if seed is not None:
        updates["seed"] = seed
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _write_run(cfg: SimConfig, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    records, summary = run_simulation(cfg)
    export_rounds(records, out_dir / "rounds.csv")
    doc = dataclasses.asdict(summary)
    doc["config"] = resolved_dict(cfg)
    (out_dir / "summary.json").write_text(json.dumps(doc, indent=2) + "\n")
    return records, summary


def _cmd_run(args) -> int:
    cfg = _with_overrides(load_config(args.config), args.protocol, args.seed)
    out_dir = Path(args.out_dir)
    _, summary = _write_run(cfg, out_dir)
    print(
        f"{cfg.protocol} seed={cfg.seed}: fnd={summary.fnd} hnd={summary.hnd} "
        f"lnd={summary.lnd} msgs_to_bs={summary.total_msgs_to_bs}"
        f"{' (censored)' if summary.censored else ''}"
    )
    print(f"wrote {out_dir / 'rounds.csv'} and {out_dir / 'summary.json'}")
    return 0


def _cmd_compare(args) -> int:
    cfg = load_config(args.config)
    protocols = [p.strip() for p in args.protocols.split(",") if p.strip()]
    for proto in protocols:
        if proto not in PROTOCOLS:
            raise ConfigError(f"unknown protocol {proto!r}")
    if args.seeds < 1:
        raise ConfigError("--seeds must be at least 1")
    seeds = [cfg.seed + i for i in range(args.seeds)]
    out_dir = Path(args.out_dir)
    aggregate_doc = {}
    plot_series = {}
    for proto in protocols:
        summaries = []
        for seed in seeds:
            run_cfg = _with_overrides(cfg, protocol=proto, seed=seed)
            run_dir = out_dir / proto / f"seed-{seed:04d}"
            records, summary = _write_run(run_cfg, run_dir)
            summaries.append(summary)
            if seed == seeds[0]:
                plot_series[proto] = records
        agg = aggregate_runs(summaries)
        aggregate_doc[proto] = {
            "n_runs": agg.n_runs,
            "censored_runs": agg.censored_runs,
            "metrics": {k: dataclasses.asdict(v) for k, v in agg.stats.items()},
        }
        row = "  ".join(
            f"{m}={agg[m].mean:.1f}±{agg[m].stddev:.1f}"
            for m in ("fnd", "hnd", "lnd", "total_msgs_to_bs")
        )
        print(f"{proto:6s} over {agg.n_runs} seeds: {row}")
    (out_dir / "aggregate.json").write_text(json.dumps(aggregate_doc, indent=2) + "\n")
    render_plots(plot_series, out_dir / "plots", deployed=cfg.n)
    print(f"wrote {out_dir / 'aggregate.json'} and {out_dir / 'plots'}")
    return 0


def _parse_vary(specs: list[str]) -> list[tuple[str, list]]:
    varied = []
    for spec in specs:
        key, _, raw = spec.partition("=")
        if not raw:
            raise ConfigError(f"--vary needs KEY=V1,V2,... (got {spec!r})")
        values = []
        for token in raw.split(","):
            try:
                values.append(json.loads(token))
            except json.JSONDecodeError:
                values.append(token)
        varied.append((key.strip(), values))
    return varied


def _cmd_sweep(args) -> int:
    base = load_config(args.config)
    varied = _parse_vary(args.vary)
    if args.seeds < 1:
        raise ConfigError("--seeds must be at least 1")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    keys = [k for k, _ in varied]
    header = keys + [
        "n_runs", "fnd_mean", "fnd_stddev", "hnd_mean", "hnd_stddev",
        "lnd_mean", "lnd_stddev", "msgs_to_bs_mean", "msgs_to_bs_stddev",
        "censored_runs",
    ]
    lines = [",".join(header)]
    base_doc = resolved_dict(base)
    for combo in itertools.product(*(vals for _, vals in varied)):
        doc = dict(base_doc)
        doc.update(dict(zip(keys, combo)))
        point_cfg = config_from_dict(doc)
        summaries = []
        for i in range(args.seeds):
            run_cfg = dataclasses.replace(point_cfg, seed=point_cfg.seed + i)
            _, summary = run_simulation(run_cfg)
            summaries.append(summary)
        agg = aggregate_runs(summaries)
        row = [str(v) for v in combo] + [
            str(agg.n_runs),
            repr(agg["fnd"].mean), repr(agg["fnd"].stddev),
            repr(agg["hnd"].mean), repr(agg["hnd"].stddev),
            repr(agg["lnd"].mean), repr(agg["lnd"].stddev),
            repr(agg["total_msgs_to_bs"].mean), repr(agg["total_msgs_to_bs"].stddev),
            str(agg.censored_runs),
        ]
        lines.append(",".join(row))
        print(lines[-1])
    (out_dir / "sweep.csv").write_text("\n".join(lines) + "\n")
    print(f"wrote {out_dir / 'sweep.csv'}")
    return 0


def _cmd_plot(args) -> int:
    series = {}
    for path in args.inputs:
        series[Path(path).stem] = read_rounds(path)
    paths = render_plots(series, args.out_dir)
    print("wrote " + ", ".join(str(p) for p in paths))
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "plot": _cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
