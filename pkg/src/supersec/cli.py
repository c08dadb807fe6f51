"""Command-line entry point: ``supersec {run,gen,process,degree}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import CapacityError, ConfigError, DomainError
from .harness.experiment import ExperimentConfig, run_experiment, write_report
from .harness.generate import GeneratorSpec, generate_instance
from .harness.process import SCHEDULES, ProcessConfig, simulate_process
from .instance import Instance

EXIT_CONFIG = 2
EXIT_CAPACITY = 3


def cmd_run(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig.load(args.config)
    if args.trials is not None:
        cfg.trials = args.trials
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.out = args.out
    if args.trace:
        cfg.trace = True
    if args.workers is not None:
        cfg.workers = args.workers
    cfg.validate()
    report = run_experiment(cfg)
    agg = report.aggregate
    print(f"algorithm      {cfg.algorithm}")
    print(f"trials         {agg['trials']}")
    print(f"mean value     {agg['mean_alg_value']}")
    print(f"std error      {agg['std_error']}")
    if report.opt_value is not None:
        print(f"optimum        {report.opt_value}")
        ratio = agg.get("ratio")
        print(f"ratio          {'undefined (opt_zero)' if agg.get('opt_zero') else ratio}")
    if cfg.out:
        csv_path, json_path = write_report(report, cfg.out)
        print(f"wrote {csv_path} and {json_path}")
    if report.fault:
        print(f"fault: {report.fault}", file=sys.stderr)
        return 1
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        data = json.loads(Path(args.spec).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read spec {args.spec}: {exc}") from exc
    seed = args.seed if args.seed is not None else int(data.pop("seed", 0))
    data.pop("seed", None)
    spec = GeneratorSpec.from_dict(data)
    inst = generate_instance(spec, np.random.default_rng(seed))
    inst.save(args.out)
    print(f"wrote {args.out}: n={inst.n}, degree={inst.valuation.supermodular_degree()}")
    return 0


def cmd_process(args: argparse.Namespace) -> int:
    cfg = ProcessConfig(args.p, args.B, args.L, args.schedule)
    res = simulate_process(cfg, np.random.default_rng(args.seed), args.trials, args.t_grid)
    print(f"p={cfg.p} B={cfg.B} L={cfg.L} schedule={cfg.schedule} trials={args.trials}")
    print(f"{'t':>12} {'frequency':>12} {'std_error':>12} {'bound':>12}")
    for row in res.tail:
        print(f"{row['t']:12.6g} {row['frequency']:12.6g} {row['std_error']:12.6g} {row['bound']:12.6g}")
    return 0


def cmd_degree(args: argparse.Namespace) -> int:
    inst = Instance.load(args.instance)
    f = inst.valuation
    print(f"supermodular degree: {f.supermodular_degree()}")
    for u in range(f.n):
        print(f"  {u}: {sorted(f.dep_set(u))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supersec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a seeded experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="directory for report.csv and report.json")
    p.add_argument("--trace", action="store_true", help="include draws and decision traces in the JSON")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("gen", help="generate an instance from a generator spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("process", help="simulate the accept/reject process and compare tails with the bound")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--schedule", choices=sorted(SCHEDULES), default="const")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-grid", type=float, nargs="+")
    p.set_defaults(func=cmd_process)

    p = sub.add_parser("degree", help="print the supermodular degree and dependency sets")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_degree)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
