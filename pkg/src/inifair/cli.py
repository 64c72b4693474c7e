"""Command-line entry point: ``python -m inifair {case,cdf,sir} ...``."""
from __future__ import annotations

import argparse
import sys

from .experiments import (
    PRESETS,
    ExperimentConfig,
    load_config,
    preset,
    run_case,
    run_cdf_experiment,
    run_sir,
)
from .numerology import AllocationError, ConfigurationError


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML experiment config")
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int, help="Monte-Carlo trials per SIR estimate")
    common.add_argument("--out-dir", help="directory for CSV output")

    p = argparse.ArgumentParser(prog="inifair", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    case = sub.add_parser("case", parents=[common], help="run a power-offset case")
    case.add_argument("--id", type=int, required=True, choices=[1, 2, 3, 4])

    cdf = sub.add_parser("cdf", parents=[common], help="SIR CDFs over random power draws")
    cdf.add_argument("--algorithms", default="random,algo1,algo2")
    cdf.add_argument("--preset", choices=sorted(k for k in PRESETS if k != "fig3"), default="fig4")
    cdf.add_argument("--instances", type=int)
    cdf.add_argument("--workers", type=int)

    sub.add_parser("sir", parents=[common], help="SIR for the config's fixed powers")
    return p


def _config(args, base: ExperimentConfig) -> ExperimentConfig:
    cfg = load_config(args.config, base) if args.config else base
    changes = {}
    for name in ("seed", "trials", "out_dir"):
        value = getattr(args, name)
        if value is not None:
            changes[name] = value
    return cfg.replace(**changes) if changes else cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "case":
            cfg = _config(args, preset("fig3"))
            report, alloc = run_case(cfg, args.id, cfg.out_dir)
            for ue in alloc.order1 + alloc.order2:
                print(f"{ue.id}\t{ue.power_db:5.1f} dB\tSIR {report.per_ue_sir_db[ue.id]:7.2f} dB")
        elif args.command == "cdf":
            base = preset(args.preset)
            cfg = _config(args, base)
            changes = {"algorithms": tuple(a for a in args.algorithms.split(",") if a)}
            if not changes["algorithms"]:
                raise ValueError("--algorithms must name at least one algorithm")
            if args.instances is not None:
                changes["instances"] = args.instances
            if args.workers is not None:
                changes["workers"] = args.workers
            cfg = cfg.replace(**changes)
            res = run_cdf_experiment(cfg, cfg.out_dir)
            for (algorithm, ue_class, which), curve in res.curves().items():
                print(
                    f"{algorithm:6s} {ue_class:5s} NUM-{which}  median {curve.quantile(0.5):7.2f} dB"
                    f"  IQR {curve.iqr():5.2f} dB  n={len(curve)}"
                )
        else:
            cfg = _config(args, ExperimentConfig())
            report, alloc = run_sir(cfg, cfg.out_dir)
            for ue in alloc.order1 + alloc.order2:
                print(f"{ue.id}\tSIR {report.per_ue_sir_db[ue.id]:7.2f} dB")
    except (ConfigurationError, AllocationError, ValueError, FileNotFoundError) as exc:
        print(f"inifair: error: {exc}", file=sys.stderr)
        return 2
    return 0
