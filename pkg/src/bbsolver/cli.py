"""Command-line entry point.

Subcommands: ``maxcut`` (random-graph sweep), ``jssp`` (one scheduling
instance), ``exact`` (exhaustive QUBO minimum for a matrix file).  Failures
exit nonzero with a one-line JSON error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .bench import ExperimentSpec, emit_report, run_jssp, run_maxcut_sweep
from .oracle import exact_qubo
from .qubo import load_qubo


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def _cmd_maxcut(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        problem="maxcut",
        sizes=_int_list(args.sizes),
        density=args.density,
        repeats=args.repeats,
        iterations=args.iterations,
        batch_size=args.batch,
        loops=args.loops,
        seed=args.seed,
        out_dir=args.out,
    )
    records = run_maxcut_sweep(spec)
    written = emit_report(records, args.out)
    print(f"wrote {len(records)} runs to {written['results']}")
    return 0


def _cmd_jssp(args: argparse.Namespace) -> int:
    weights = _float_list(args.weights)
    if len(weights) != 4:
        raise ValueError("--weights needs exactly 4 comma-separated values")
    spec = ExperimentSpec(
        problem="jssp",
        instance_path=args.instance,
        t_max=args.tmax,
        weights=weights,
        gamma=args.gamma,
        iterations=args.iterations,
        batch_size=args.batch,
        loops=args.loops,
        seed=args.seed,
        out_dir=args.out,
        jssp_input_state=_int_list(args.input_state),
    )
    record = run_jssp(spec)
    written = emit_report([record], args.out)
    status = "schedule found" if record.gantt is not None else "no valid schedule"
    print(f"{status}; wrote {written['results']}")
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    result = exact_qubo(load_qubo(args.qubo))
    print(json.dumps(asdict(result)))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bench",
        description="Sampler-driven QUBO benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("maxcut", help="random-graph max-cut sweep")
    p.add_argument("--sizes", default="2,3,4,6,8,12,15,20,25", help="comma-separated instance sizes")
    p.add_argument("--density", type=float, default=0.8)
    p.add_argument("--iterations", type=int, default=20)
    p.add_argument("--batch", type=int, default=20)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--loops", type=int, choices=(1, 2), default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(handler=_cmd_maxcut)

    p = sub.add_parser("jssp", help="solve one scheduling instance")
    p.add_argument("--instance", required=True, help="instance JSON file")
    p.add_argument("--tmax", type=int, default=None, help="override the instance horizon")
    p.add_argument("--weights", default="1,2,5,1", help="four constraint weights")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--iterations", type=int, default=20)
    p.add_argument("--batch", type=int, default=20)
    p.add_argument("--loops", type=int, choices=(1, 2), default=1)
    p.add_argument("--input-state", default="1,0,1,0", help="per-tile photon template")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(handler=_cmd_jssp)

    p = sub.add_parser("exact", help="exhaustive QUBO minimum")
    p.add_argument("--qubo", required=True, help="QUBO JSON file")
    p.set_defaults(handler=_cmd_exact)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Exception as exc:  # surface every operational failure uniformly
        print(
            json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
