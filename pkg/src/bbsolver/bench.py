"""Benchmark harness: random-graph max-cut sweeps, the scheduling toy run,
timing, and result persistence.

Every (size, repeat) cell derives its own seeds from the master seed, so a
sweep is reproducible byte-for-byte (timing columns aside) and cells could
run in any order without changing results.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .oracle import exact_jssp, exact_maxcut
from .qubo import (
    Graph,
    JsspInstance,
    Schedule,
    decode_schedule,
    encode_jssp,
    encode_maxcut,
    load_jssp,
)
from .solver import BbsConfig, BbsRun, FockState, TraceEntry, plan_tiling, quality, solve

# Instance size -> sampler input template used by the sweep protocol.
INPUT_STATE_FOR_SIZE: dict[int, tuple[int, ...]] = {
    2: (1, 0),
    3: (1, 0, 1),
    4: (1, 0, 1, 0),
    6: (1, 0, 1),
    8: (1, 0, 1, 0),
    12: (1, 0, 1),
    15: (1, 0, 1),
    20: (1, 0, 1, 0),
    25: (1, 0, 1, 0, 1),
}

# Timing columns are excluded from byte-level reproducibility checks.
CSV_COLUMNS = [
    "problem",
    "size",
    "repeat",
    "seed",
    "best_cost",
    "exact_value",
    "quality",
    "circuit_runs",
    "best_sample",
    "bbs_time_s",
    "exact_time_s",
]
TIMING_COLUMNS = ("bbs_time_s", "exact_time_s")


def alternating_state(width: int) -> tuple[int, ...]:
    """Sparse template [1, 0, 1, ...] of the given width."""
    return tuple(1 - (i % 2) for i in range(width))


def input_state_for_size(n_vars: int) -> tuple[int, ...]:
    """Sampler template for an instance size.

    Known sizes use the fixed protocol table; other sizes take the smallest
    width in 2..5 whose alternating template minimizes tiling padding.
    """
    if n_vars in INPUT_STATE_FOR_SIZE:
        return INPUT_STATE_FOR_SIZE[n_vars]
    best_width = min(range(2, 6), key=lambda w: (-(-n_vars // w) * w - n_vars, w))
    return alternating_state(best_width)


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment: what to solve, how hard to try, where to write."""

    problem: str
    sizes: tuple[int, ...] = ()
    density: float = 0.8
    repeats: int = 10
    iterations: int = 20
    batch_size: int = 20
    loops: int = 1
    seed: int = 0
    out_dir: str | Path | None = None
    instance_path: str | Path | None = None
    t_max: int | None = None
    weights: tuple[float, float, float, float] = (1.0, 2.0, 5.0, 1.0)
    gamma: float = 1.0
    jssp_input_state: tuple[int, ...] = (1, 0, 1, 0)

    def __post_init__(self) -> None:
        if self.problem not in ("maxcut", "jssp"):
            raise ValueError(f"unknown problem {self.problem!r}")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must be in (0, 1]")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")


@dataclass(frozen=True)
class ExperimentRecord:
    """One solver run against one instance, with its reference solution."""

    problem: str
    size: int
    repeat: int
    seed: int
    best_cost: float
    exact_value: float
    quality: float
    circuit_runs: int
    best_sample: tuple[int, ...]
    bbs_time_s: float
    exact_time_s: float
    trace: tuple[TraceEntry, ...]
    gantt: tuple[dict, ...] | None = None


def _child_seed(master: int, *key: int) -> int:
    return int(np.random.SeedSequence([int(master), *map(int, key)]).generate_state(1)[0])


def _is_connected(n: int, edges: list[tuple[int, int]]) -> bool:
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == n


def gen_graph(n: int, p: float, seed: int) -> Graph:
    """Random G(n, p) graph, resampled until connected (at most 1000 tries)."""
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if not 0.0 < p <= 1.0:
        raise ValueError("p must be in (0, 1]")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
        ]
        if _is_connected(n, edges):
            return Graph(n, tuple(edges))
    raise RuntimeError(f"failed to draw a connected G({n}, {p}) in 1000 attempts")


def run_maxcut_sweep(spec: ExperimentSpec) -> list[ExperimentRecord]:
    """Solve fresh random graphs at every size, `repeats` times each, and
    score each run against the exhaustive optimum."""
    records = []
    for size in spec.sizes:
        template = input_state_for_size(size)
        for repeat in range(spec.repeats):
            graph_seed = _child_seed(spec.seed, size, repeat, 0)
            solver_seed = _child_seed(spec.seed, size, repeat, 1)
            graph = gen_graph(size, spec.density, graph_seed)
            exact = exact_maxcut(graph)
            config = BbsConfig(
                iterations=spec.iterations,
                batch_size=spec.batch_size,
                input_state=FockState(template),
                loops=spec.loops,
                rng_seed=solver_seed,
            )
            started = time.perf_counter()
            run = solve(encode_maxcut(graph), config)
            bbs_time = time.perf_counter() - started
            records.append(
                ExperimentRecord(
                    problem="maxcut",
                    size=size,
                    repeat=repeat,
                    seed=solver_seed,
                    best_cost=run.best_cost,
                    exact_value=exact.best_value,
                    quality=quality(graph, run.best_sample, int(exact.best_value)),
                    circuit_runs=run.circuit_run_count,
                    best_sample=run.best_sample,
                    bbs_time_s=bbs_time,
                    exact_time_s=exact.elapsed,
                    trace=run.trace,
                )
            )
    return records


def run_jssp(spec: ExperimentSpec) -> ExperimentRecord:
    """Encode, solve, and decode one scheduling instance.

    An infeasible horizon surfaces as an error before any solving starts.
    The record's quality is optimum makespan / achieved makespan when the
    best sample decodes to a schedule, else 0.
    """
    if spec.instance_path is None:
        raise ValueError("jssp experiments need an instance file")
    inst = load_jssp(spec.instance_path)
    if spec.t_max is not None:
        inst = replace(inst, t_max=int(spec.t_max))
    q, vmap = encode_jssp(inst, spec.weights, spec.gamma)
    exact = exact_jssp(inst)
    config = BbsConfig(
        iterations=spec.iterations,
        batch_size=spec.batch_size,
        input_state=FockState(spec.jssp_input_state),
        loops=spec.loops,
        rng_seed=_child_seed(spec.seed, len(vmap), 0, 1),
    )
    started = time.perf_counter()
    run = solve(q, config)
    bbs_time = time.perf_counter() - started
    decoded = decode_schedule(vmap, run.best_sample)
    gantt: tuple[dict, ...] | None = None
    achieved_quality = 0.0
    if isinstance(decoded, Schedule):
        gantt = tuple(
            {
                "job": op.job,
                "op": op.op,
                "machine": op.machine,
                "start": op.start,
                "duration": op.duration,
            }
            for op in decoded.ops
        )
        if exact.feasible:
            achieved_quality = exact.makespan / decoded.makespan
    return ExperimentRecord(
        problem="jssp",
        size=q.n,
        repeat=0,
        seed=spec.seed,
        best_cost=run.best_cost,
        exact_value=float(exact.makespan) if exact.feasible else -1.0,
        quality=achieved_quality,
        circuit_runs=run.circuit_run_count,
        best_sample=run.best_sample,
        bbs_time_s=bbs_time,
        exact_time_s=exact.elapsed,
        trace=run.trace,
        gantt=gantt,
    )


def _aggregate(records: list[ExperimentRecord]) -> dict:
    grouped: dict[tuple[str, int], list[ExperimentRecord]] = {}
    for rec in records:
        grouped.setdefault((rec.problem, rec.size), []).append(rec)
    out: dict = {}
    for (problem, size), rows in sorted(grouped.items()):
        qualities = [r.quality for r in rows]
        out.setdefault(problem, {})[str(size)] = {
            "runs": len(rows),
            "quality_mean": float(np.mean(qualities)),
            "quality_min": float(np.min(qualities)),
            "quality_max": float(np.max(qualities)),
            "best_cost_mean": float(np.mean([r.best_cost for r in rows])),
            "bbs_time_mean_s": float(np.mean([r.bbs_time_s for r in rows])),
            "exact_time_mean_s": float(np.mean([r.exact_time_s for r in rows])),
        }
    return out


def emit_report(records: list[ExperimentRecord], out_dir) -> dict[str, Path]:
    """Write results.csv, aggregate.json, and plot-ready series files.

    Returns the paths written, keyed by a short name.
    """
    if not records:
        raise ValueError("no records to report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    series_dir = out / "series"
    series_dir.mkdir(exist_ok=True)
    written: dict[str, Path] = {}

    csv_path = out / "results.csv"
    with csv_path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(
                [
                    rec.problem,
                    rec.size,
                    rec.repeat,
                    rec.seed,
                    repr(rec.best_cost),
                    repr(rec.exact_value),
                    repr(rec.quality),
                    rec.circuit_runs,
                    "".join(str(b) for b in rec.best_sample),
                    repr(rec.bbs_time_s),
                    repr(rec.exact_time_s),
                ]
            )
    written["results"] = csv_path

    aggregate = _aggregate(records)
    agg_path = out / "aggregate.json"
    agg_path.write_text(json.dumps(aggregate, indent=2, sort_keys=True) + "\n")
    written["aggregate"] = agg_path

    maxcut_rows = [r for r in records if r.problem == "maxcut"]
    if maxcut_rows:
        sizes = sorted({r.size for r in maxcut_rows})
        per_size = {s: [r for r in maxcut_rows if r.size == s] for s in sizes}
        quality_series = {
            "size": sizes,
            "quality_mean": [float(np.mean([r.quality for r in per_size[s]])) for s in sizes],
            "quality_min": [float(np.min([r.quality for r in per_size[s]])) for s in sizes],
            "quality_max": [float(np.max([r.quality for r in per_size[s]])) for s in sizes],
        }
        time_series = {
            "size": sizes,
            "bbs_time_mean_s": [
                float(np.mean([r.bbs_time_s for r in per_size[s]])) for s in sizes
            ],
            "exact_time_mean_s": [
                float(np.mean([r.exact_time_s for r in per_size[s]])) for s in sizes
            ],
        }
        path = series_dir / "quality_vs_size.json"
        path.write_text(json.dumps(quality_series, indent=2) + "\n")
        written["quality_vs_size"] = path
        path = series_dir / "time_vs_size.json"
        path.write_text(json.dumps(time_series, indent=2) + "\n")
        written["time_vs_size"] = path

    jssp_rows = [r for r in records if r.problem == "jssp"]
    if jssp_rows:
        rec = jssp_rows[0]
        curve = {
            "iteration": list(range(1, len(rec.trace) + 1)),
            "cost_mean": [t.mean_cost for t in rec.trace],
            "cost_min": [t.min_cost for t in rec.trace],
            "cost_max": [t.max_cost for t in rec.trace],
        }
        path = series_dir / "learning_curve.json"
        path.write_text(json.dumps(curve, indent=2) + "\n")
        written["learning_curve"] = path
        if rec.gantt is not None:
            path = series_dir / "gantt.json"
            path.write_text(json.dumps(list(rec.gantt), indent=2) + "\n")
            written["gantt"] = path

    return written


def strip_timing_columns(csv_text: str) -> str:
    """Drop the wall-clock columns so outputs can be compared byte-wise."""
    rows = list(csv.reader(csv_text.splitlines()))
    keep = [i for i, name in enumerate(rows[0]) if name not in TIMING_COLUMNS]
    out = [",".join(row[i] for i in keep) for row in rows]
    return "\n".join(out) + "\n"
