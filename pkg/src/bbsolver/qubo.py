"""QUBO containers and problem encoders.

Covers the two problem families the solver is benchmarked on: max-cut over
simple graphs and time-indexed job-shop scheduling with weighted penalty
terms, variable pruning, and an L2 pull toward one start per operation.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class InfeasibleHorizonError(ValueError):
    """An operation has no legal start slot within the horizon."""


@dataclass(frozen=True, eq=False)
class QuboMatrix:
    """Upper-triangular QUBO with an optional constant offset and L2 pull.

    ``cost(x) = x^T q x + offset + reg_gamma * (sum(x) - reg_target)^2``.
    The strictly lower triangle must be zero (canonical one-sided storage),
    so each pair coefficient appears exactly once at ``q[i, j]`` with i < j.
    """

    n: int
    q: np.ndarray
    reg_gamma: float = 0.0
    reg_target: int = 0
    offset: float = 0.0

    def __post_init__(self) -> None:
        q = np.array(self.q, dtype=float)
        if q.shape != (self.n, self.n):
            raise ValueError(f"matrix shape {q.shape} does not match n={self.n}")
        if np.any(np.tril(q, -1) != 0.0):
            raise ValueError("strictly lower triangle must be zero")
        if self.reg_gamma < 0:
            raise ValueError("reg_gamma must be >= 0")
        if self.reg_target < 0:
            raise ValueError("reg_target must be >= 0")
        q.setflags(write=False)
        object.__setattr__(self, "q", q)


def cost(q: QuboMatrix, x) -> float:
    """Evaluate the QUBO objective on one bit-vector."""
    vec = np.asarray(x, dtype=float)
    if vec.shape != (q.n,):
        raise ValueError(f"expected {q.n} bits, got shape {vec.shape}")
    value = float(vec @ q.q @ vec) + q.offset
    if q.reg_gamma:
        value += q.reg_gamma * float(vec.sum() - q.reg_target) ** 2
    return value


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are normalized to sorted pairs and stored in sorted order, so two
    graphs with the same edge set compare equal.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("vertex count must be >= 1")
        seen: set[tuple[int, int]] = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge ({a}, {b}) out of range for n={self.n}")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def graph_from_dict(data: dict) -> Graph:
    return Graph(int(data["n"]), tuple((int(a), int(b)) for a, b in data["edges"]))


def load_graph(path) -> Graph:
    return graph_from_dict(json.loads(Path(path).read_text()))


def encode_maxcut(g: Graph) -> QuboMatrix:
    """Max-cut as a QUBO: +2 on each edge pair, minus the degree on the
    diagonal.

    Minimizing the result maximizes the cut:
    ``cut_size(g, x) == -cost(encode_maxcut(g), x)`` for every assignment.
    """
    if not g.edges:
        warnings.warn("graph has no edges; every assignment has cost 0", stacklevel=2)
    q = np.zeros((g.n, g.n))
    for a, b in g.edges:
        q[a, b] += 2.0
        q[a, a] -= 1.0
        q[b, b] -= 1.0
    return QuboMatrix(n=g.n, q=q)


def cut_size(g: Graph, x) -> int:
    """Number of edges with endpoints on opposite sides of the bipartition."""
    if len(x) != g.n:
        raise ValueError(f"expected {g.n} bits, got {len(x)}")
    return sum(1 for a, b in g.edges if x[a] != x[b])


@dataclass(frozen=True)
class Operation:
    machine: str
    duration: int


@dataclass(frozen=True)
class JsspInstance:
    """Jobs as ordered operation lists over named machines, with a horizon.

    ``t_max`` is the number of discrete time slots; operations may start at
    t in [0, t_max) and occupy ``duration`` consecutive slots.
    """

    job_names: tuple[str, ...]
    jobs: tuple[tuple[Operation, ...], ...]
    machines: tuple[str, ...]
    t_max: int

    def __post_init__(self) -> None:
        if len(self.job_names) != len(self.jobs):
            raise ValueError("job_names and jobs must have the same length")
        if len(set(self.job_names)) != len(self.job_names):
            raise ValueError("job names must be unique")
        if len(set(self.machines)) != len(self.machines):
            raise ValueError("machine names must be unique")
        if self.t_max < 1:
            raise ValueError("t_max must be >= 1")
        known = set(self.machines)
        for name, ops in zip(self.job_names, self.jobs):
            if not ops:
                raise ValueError(f"job {name!r} has no operations")
            for op in ops:
                if op.machine not in known:
                    raise ValueError(f"job {name!r} uses unknown machine {op.machine!r}")
                if int(op.duration) < 1:
                    raise ValueError(f"job {name!r} has a non-positive duration")

    @property
    def total_operations(self) -> int:
        return sum(len(ops) for ops in self.jobs)

    @classmethod
    def from_dict(cls, data: dict) -> "JsspInstance":
        names = tuple(data["jobs"])
        jobs = tuple(
            tuple(Operation(str(m), int(d)) for m, d in data["jobs"][name])
            for name in names
        )
        return cls(names, jobs, tuple(data["machines"]), int(data["t_max"]))

    def to_dict(self) -> dict:
        return {
            "machines": list(self.machines),
            "t_max": self.t_max,
            "jobs": {
                name: [[op.machine, op.duration] for op in ops]
                for name, ops in zip(self.job_names, self.jobs)
            },
        }


def load_jssp(path) -> JsspInstance:
    return JsspInstance.from_dict(json.loads(Path(path).read_text()))


class VariableMap:
    """Bijection between dense indices and (job, op, start) triples.

    Iteration order is job-major, then operation, then start time, and is
    the column/row order of any matrix encoded against this map.
    """

    def __init__(self, instance: JsspInstance, triples) -> None:
        self.instance = instance
        self.triples = tuple(triples)
        self._index = {t: i for i, t in enumerate(self.triples)}
        by_op: dict[tuple[int, int], list[int]] = {}
        for i, (j, k, _) in enumerate(self.triples):
            by_op.setdefault((j, k), []).append(i)
        self._op_vars = {key: tuple(v) for key, v in by_op.items()}

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def index_of(self, job: int, op: int, start: int) -> int:
        return self._index[(job, op, start)]

    def triple_of(self, i: int) -> tuple[int, int, int]:
        return self.triples[i]

    def op_variables(self, job: int, op: int) -> tuple[int, ...]:
        """Indices of this operation's start variables, in time order."""
        return self._op_vars.get((job, op), ())


def build_variable_map(inst: JsspInstance, prune: bool = True) -> VariableMap:
    """Enumerate start-time variables, dropping slots no schedule can use.

    A start t survives pruning iff the operation's predecessors can all have
    finished (t >= sum of earlier durations in the job) and the rest of the
    job still fits before the horizon (t <= t_max - remaining duration).
    With ``prune=False`` every (operation, t) pair for t in [0, t_max) is
    kept, which is useful for cross-checking the pruning itself.
    """
    triples: list[tuple[int, int, int]] = []
    for j, ops in enumerate(inst.jobs):
        durations = [op.duration for op in ops]
        for k in range(len(ops)):
            if prune:
                lo = sum(durations[:k])
                hi = inst.t_max - sum(durations[k:])
            else:
                lo, hi = 0, inst.t_max - 1
            if lo > hi:
                raise InfeasibleHorizonError(
                    f"operation (job={inst.job_names[j]!r}, op={k}) has no legal "
                    f"start slot within t_max={inst.t_max}"
                )
            triples.extend((j, k, t) for t in range(lo, hi + 1))
    return VariableMap(inst, triples)


def encode_jssp(
    inst: JsspInstance,
    weights: tuple[float, float, float, float] = (1.0, 2.0, 5.0, 1.0),
    gamma: float = 1.0,
) -> tuple[QuboMatrix, VariableMap]:
    """Time-indexed scheduling QUBO as a weighted sum of penalty blocks.

    Blocks, in weight order: exactly one start per operation, machine
    exclusivity (no two distinct operations overlap on one machine),
    precedence within each job, and a completion-time penalty
    ``(t + duration - 1) / t_max`` on each job's final operation so earlier
    finishes cost less.  The regularizer pulls the number of set bits toward
    the total operation count.  Constant terms from the exactly-one
    expansion land in the offset so reported costs equal the algebraic
    penalty value.
    """
    w1, w2, w3, w4 = (float(w) for w in weights)
    if min(w1, w2, w3, w4) < 0:
        raise ValueError("constraint weights must be >= 0")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    vmap = build_variable_map(inst)
    n = len(vmap)
    q = np.zeros((n, n))
    offset = 0.0

    # Exactly-one start: (sum_t x - 1)^2 per operation.
    for j, ops in enumerate(inst.jobs):
        for k in range(len(ops)):
            idxs = vmap.op_variables(j, k)
            for i in idxs:
                q[i, i] -= w1
            for pos, a in enumerate(idxs):
                for b in idxs[pos + 1 :]:
                    q[a, b] += 2.0 * w1
            offset += w1

    # Machine exclusivity: distinct operations on one machine with
    # overlapping execution windows [t, t + duration).
    by_machine: dict[str, list[tuple[int, int]]] = {}
    for j, ops in enumerate(inst.jobs):
        for k, op in enumerate(ops):
            by_machine.setdefault(op.machine, []).append((j, k))
    for ops_on_machine in by_machine.values():
        for pos, (j1, k1) in enumerate(ops_on_machine):
            d1 = inst.jobs[j1][k1].duration
            for j2, k2 in ops_on_machine[pos + 1 :]:
                d2 = inst.jobs[j2][k2].duration
                for i1 in vmap.op_variables(j1, k1):
                    t1 = vmap.triple_of(i1)[2]
                    for i2 in vmap.op_variables(j2, k2):
                        t2 = vmap.triple_of(i2)[2]
                        if t1 < t2 + d2 and t2 < t1 + d1:
                            a, b = (i1, i2) if i1 < i2 else (i2, i1)
                            q[a, b] += w2

    # Precedence: the next operation of a job must not start before the
    # previous one has finished.
    for j, ops in enumerate(inst.jobs):
        for k in range(len(ops) - 1):
            d = ops[k].duration
            for i1 in vmap.op_variables(j, k):
                t1 = vmap.triple_of(i1)[2]
                for i2 in vmap.op_variables(j, k + 1):
                    t2 = vmap.triple_of(i2)[2]
                    if t2 < t1 + d:
                        a, b = (i1, i2) if i1 < i2 else (i2, i1)
                        q[a, b] += w3

    # Completion-time pressure on each job's final operation.
    for j, ops in enumerate(inst.jobs):
        k = len(ops) - 1
        d = ops[k].duration
        for i in vmap.op_variables(j, k):
            t = vmap.triple_of(i)[2]
            q[i, i] += w4 * (t + d - 1) / inst.t_max

    matrix = QuboMatrix(
        n=n,
        q=q,
        reg_gamma=float(gamma),
        reg_target=inst.total_operations,
        offset=offset,
    )
    return matrix, vmap


@dataclass(frozen=True)
class ScheduledOp:
    job: str
    op: int
    machine: str
    start: int
    duration: int


@dataclass(frozen=True)
class Schedule:
    ops: tuple[ScheduledOp, ...]
    makespan: int


@dataclass(frozen=True)
class ViolationReport:
    """Constraint violations of an assignment, grouped by class.

    ``start_counts`` lists (job, op, count) for operations not started
    exactly once; ``machine_overlaps`` lists (machine, triple, triple) for
    selected starts that collide on a machine; ``precedence`` lists pairs of
    selected triples where a successor starts before its predecessor ends.
    """

    start_counts: tuple[tuple[int, int, int], ...]
    machine_overlaps: tuple[tuple[str, tuple[int, int, int], tuple[int, int, int]], ...]
    precedence: tuple[tuple[tuple[int, int, int], tuple[int, int, int]], ...]


def decode_schedule(vmap: VariableMap, x) -> Schedule | ViolationReport:
    """Interpret a bit-vector as a schedule, or report why it is not one.

    Violations are data, not errors: any assignment decodes to either a
    :class:`Schedule` (start times plus makespan) or a
    :class:`ViolationReport`.
    """
    if len(x) != len(vmap):
        raise ValueError(f"expected {len(vmap)} bits, got {len(x)}")
    inst = vmap.instance
    selected: dict[tuple[int, int], list[int]] = {}
    for i, bit in enumerate(x):
        if bit:
            j, k, t = vmap.triple_of(i)
            selected.setdefault((j, k), []).append(t)

    start_counts = []
    for j, ops in enumerate(inst.jobs):
        for k in range(len(ops)):
            count = len(selected.get((j, k), ()))
            if count != 1:
                start_counts.append((j, k, count))

    flat = [
        (j, k, t) for (j, k), starts in sorted(selected.items()) for t in starts
    ]
    machine_overlaps = []
    for p, (j1, k1, t1) in enumerate(flat):
        op1 = inst.jobs[j1][k1]
        for j2, k2, t2 in flat[p + 1 :]:
            if (j1, k1) == (j2, k2):
                continue
            op2 = inst.jobs[j2][k2]
            if op1.machine != op2.machine:
                continue
            if t1 < t2 + op2.duration and t2 < t1 + op1.duration:
                machine_overlaps.append((op1.machine, (j1, k1, t1), (j2, k2, t2)))

    precedence = []
    for (j, k), starts in sorted(selected.items()):
        following = selected.get((j, k + 1))
        if not following:
            continue
        d = inst.jobs[j][k].duration
        for t1 in starts:
            for t2 in following:
                if t2 < t1 + d:
                    precedence.append(((j, k, t1), (j, k + 1, t2)))

    if start_counts or machine_overlaps or precedence:
        return ViolationReport(
            tuple(start_counts), tuple(machine_overlaps), tuple(precedence)
        )

    scheduled = []
    for j, ops in enumerate(inst.jobs):
        for k, op in enumerate(ops):
            t = selected[(j, k)][0]
            scheduled.append(
                ScheduledOp(inst.job_names[j], k, op.machine, t, op.duration)
            )
    makespan = max(s.start + s.duration for s in scheduled)
    return Schedule(tuple(scheduled), makespan)


def load_qubo(path) -> QuboMatrix:
    """Read a QUBO from JSON: ``{"n": int, "q": [[...]], "gamma": float,
    "target": int, "offset": float}`` with the last three optional."""
    data = json.loads(Path(path).read_text())
    return QuboMatrix(
        n=int(data["n"]),
        q=np.array(data["q"], dtype=float),
        reg_gamma=float(data.get("gamma", 0.0)),
        reg_target=int(data.get("target", 0)),
        offset=float(data.get("offset", 0.0)),
    )
