"""Command-line entry point.

Subcommands map onto the three scenarios:

* ``maxcut``        -- scenario A (Max-Cut control), VQE or QAOA
* ``shortest-path`` -- scenario B (16-qubit static routing), VQE or QAOA
* ``qrl``           -- scenario C, policy-circuit agent plus random baseline
* ``baseline``      -- scenario C, random baseline only

Flags mirror the config-file keys; ``--config FILE`` loads a JSON config
and explicit flags override it.  Exit codes: 0 success, 2 configuration
error, 3 input error (files/graphs), 1 unexpected failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .graph import GraphError
from .harness import ConfigError, ExperimentConfig, run

_SUBCOMMANDS = {
    # name -> (scenario, default algorithm, allowed algorithms)
    "maxcut": ("A", "qaoa", ("vqe", "qaoa")),
    "shortest-path": ("B", "vqe", ("vqe", "qaoa")),
    "qrl": ("C", "qrl", ("qrl",)),
    "baseline": ("C", "random", ("random",)),
}


def _add_common(p: argparse.ArgumentParser, algos):
    p.add_argument("--config", metavar="FILE",
                   help="JSON config file; explicit flags override it")
    if len(algos) > 1:
        p.add_argument("--algorithm", choices=algos)
    p.add_argument("--seed", type=int)
    p.add_argument("--steps", type=int, help="optimizer steps (scenarios A/B)")
    p.add_argument("--layers", type=int,
                   help="ansatz layers (VQE), QAOA depth p, or policy layers")
    p.add_argument("--lr", type=float, help="Adam learning rate")
    p.add_argument("--episodes", type=int, help="training episodes (scenario C)")
    p.add_argument("--shots", type=int, help="final-readout measurement shots")
    p.add_argument("--restarts", type=int,
                   help="number of seeds (seed, seed+1, ...) to run")
    p.add_argument("--out", help="output directory")
    p.add_argument("--plots", action="store_true", default=None,
                   help="also write SVG plots of energy traces")
    p.add_argument("--episode-logs", action="store_true", default=None,
                   dest="episode_logs",
                   help="write per-step episode logs (scenario C)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qroute",
        description="Variational-quantum routing benchmarks: "
                    "Max-Cut control, 16-qubit shortest path, dynamic routing agent.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, algos) in _SUBCOMMANDS.items():
        p = sub.add_parser(name)
        _add_common(p, algos)
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    scenario, default_algo, _ = _SUBCOMMANDS[args.command]
    if args.config:
        config = ExperimentConfig.from_file(args.config)
    else:
        config = ExperimentConfig()
    overrides = {"scenario": scenario,
                 "algorithm": getattr(args, "algorithm", None) or default_algo}
    for key in ("seed", "steps", "layers", "lr", "episodes", "shots",
                "restarts", "out", "plots", "episode_logs"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    return dataclasses.replace(config, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        report = run(config)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except (GraphError, FileNotFoundError) as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"error: runtime: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(report.text())
    print(f"outputs written to {report.out_dir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
