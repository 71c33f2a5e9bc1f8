"""Hybrid sampler-driven QUBO solver.

Candidate bit-vectors come from thresholded photon patterns of per-tile
interferometers, optionally passed through a trainable bit-flip layer; every
continuous parameter (coupler angles of all tiles plus flip logits) is
trained with simultaneous-perturbation (SPSA) gradient estimates against the
QUBO cost.  Problems wider than one tile are covered by tiling: each tile
contributes a slice of the candidate, and trailing padding bits of the last
tile are dropped before any cost is evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

import numpy as np

from .interferometer import (
    FockState,
    InterferometerSpec,
    build_unitary,
    output_distribution,
    threshold_readout,
)
from .qubo import Graph, QuboMatrix, cost, cut_size


@dataclass(frozen=True)
class SpsaParams:
    """Gain-sequence hyperparameters: a_k = a / (k + 1 + A)^alpha and
    c_k = c / (k + 1)^gamma, with A defaulting to 10% of the iteration
    budget when ``stability`` is None."""

    a: float = 0.1
    c: float = 0.1
    stability: float | None = None
    alpha: float = 0.602
    gamma: float = 0.101


@dataclass(frozen=True)
class BbsConfig:
    """Run configuration: sampling protocol, tile template, and training
    hyperparameters."""

    iterations: int
    batch_size: int
    input_state: FockState
    loops: int = 1
    spsa: SpsaParams = field(default_factory=SpsaParams)
    bitflip_enabled: bool = True
    per_tile_gradients: bool = False
    rng_seed: int = 0

    def __post_init__(self) -> None:
        state = (
            self.input_state
            if isinstance(self.input_state, FockState)
            else FockState(tuple(self.input_state))
        )
        object.__setattr__(self, "input_state", state)
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if state.total_photons < 1:
            raise ValueError("input state needs at least one photon")
        if self.loops not in (1, 2):
            raise ValueError("loops must be 1 or 2")


@dataclass(frozen=True)
class TilingPlan:
    n_vars: int
    tile_width: int
    tile_count: int
    padding: int


def plan_tiling(n_vars: int, input_state) -> TilingPlan:
    """Cover ``n_vars`` bits with ceil(n / width) sampler tiles.

    The last tile may overhang; its trailing ``padding`` bits are sampled
    like any others and then discarded, so they never reach a cost function.
    """
    if n_vars < 1:
        raise ValueError("n_vars must be >= 1")
    width = len(input_state)
    tiles = -(-n_vars // width)
    return TilingPlan(n_vars, width, tiles, tiles * width - n_vars)


@dataclass(frozen=True, eq=False)
class SolverParams:
    """Trainable state: per-tile coupler angles plus optional flip logits.

    ``thetas`` has shape (tile_count, loops * (tile_width - 1)); the logits
    map through a logistic function to per-bit flip probabilities in (0, 1).
    """

    thetas: np.ndarray
    flip_logits: np.ndarray | None

    @property
    def count(self) -> int:
        flips = 0 if self.flip_logits is None else self.flip_logits.size
        return self.thetas.size + flips


def angles_per_tile(plan: TilingPlan, config: BbsConfig) -> int:
    return config.loops * (plan.tile_width - 1)


def init_params(plan: TilingPlan, config: BbsConfig, rng: np.random.Generator) -> SolverParams:
    """Angles uniform in (-pi/4, pi/4); logits at zero (flip probability 1/2,
    maximal exploration)."""
    thetas = rng.uniform(
        -math.pi / 4, math.pi / 4, size=(plan.tile_count, angles_per_tile(plan, config))
    )
    logits = np.zeros(plan.n_vars) if config.bitflip_enabled else None
    return SolverParams(thetas, logits)


def pack_params(params: SolverParams) -> np.ndarray:
    if params.flip_logits is None:
        return params.thetas.ravel().copy()
    return np.concatenate([params.thetas.ravel(), params.flip_logits])


def unpack_params(vec: np.ndarray, plan: TilingPlan, config: BbsConfig) -> SolverParams:
    apt = angles_per_tile(plan, config)
    n_theta = plan.tile_count * apt
    thetas = np.asarray(vec[:n_theta], dtype=float).reshape(plan.tile_count, apt)
    logits = np.asarray(vec[n_theta:], dtype=float) if config.bitflip_enabled else None
    return SolverParams(thetas, logits)


def _tile_draw_tables(params: SolverParams, plan: TilingPlan, config: BbsConfig):
    """Per tile: (outcome probabilities, thresholded bit rows)."""
    tables = []
    for tile_thetas in params.thetas:
        spec = InterferometerSpec(plan.tile_width, config.loops, tuple(tile_thetas))
        dist = output_distribution(build_unitary(spec), config.input_state)
        probs = np.clip(np.fromiter(dist.values(), dtype=float, count=len(dist)), 0.0, None)
        probs /= probs.sum()
        bits = np.array([threshold_readout(s) for s in dist], dtype=np.int8)
        tables.append((probs, bits))
    return tables


def _draw_batch(tables, params: SolverParams, plan: TilingPlan,
                rng: np.random.Generator, batch: int) -> np.ndarray:
    columns = []
    for probs, bits in tables:
        picks = rng.choice(len(probs), size=batch, p=probs)
        columns.append(bits[picks])
    candidates = np.concatenate(columns, axis=1)[:, : plan.n_vars]
    if params.flip_logits is not None:
        p_flip = 1.0 / (1.0 + np.exp(-params.flip_logits))
        flips = rng.random((batch, plan.n_vars)) < p_flip
        candidates = np.where(flips, 1 - candidates, candidates)
    return candidates


def draw_candidate(params: SolverParams, plan: TilingPlan, config: BbsConfig,
                   rng: np.random.Generator) -> np.ndarray:
    """Sample one length-n candidate: one pattern per tile, thresholded,
    concatenated, padding dropped, then independent per-bit flips when the
    flip layer is enabled."""
    tables = _tile_draw_tables(params, plan, config)
    return _draw_batch(tables, params, plan, rng, 1)[0]


@dataclass(frozen=True)
class BatchResult:
    mean_cost: float
    best_x: tuple[int, ...]
    best_cost: float
    max_cost: float
    circuit_runs: int


def batch_cost(q: QuboMatrix, params: SolverParams, plan: TilingPlan,
               config: BbsConfig, rng: np.random.Generator) -> BatchResult:
    """Draw one batch of candidates and score them against the cost.

    Ties for the batch best go to the first candidate drawn, which keeps
    results independent of how the batch might be parallelized.
    """
    if q.n != plan.n_vars:
        raise ValueError(f"matrix has {q.n} variables, plan covers {plan.n_vars}")
    tables = _tile_draw_tables(params, plan, config)
    candidates = _draw_batch(tables, params, plan, rng, config.batch_size)
    costs = np.array([cost(q, row) for row in candidates])
    best = int(np.argmin(costs))
    return BatchResult(
        mean_cost=float(costs.mean()),
        best_x=tuple(int(v) for v in candidates[best]),
        best_cost=float(costs[best]),
        max_cost=float(costs.max()),
        circuit_runs=config.batch_size * plan.tile_count,
    )


def spsa_gains(k: int, iterations: int, sp: SpsaParams) -> tuple[float, float]:
    """Step size a_k and perturbation size c_k at 0-based iteration k."""
    stability = sp.stability if sp.stability is not None else 0.1 * iterations
    a_k = sp.a / (k + 1 + stability) ** sp.alpha
    c_k = sp.c / (k + 1) ** sp.gamma
    return a_k, c_k


def spsa_step(vec, grad_estimate, k: int, iterations: int, sp: SpsaParams) -> np.ndarray:
    """One gradient-descent update with the decaying step size."""
    a_k, _ = spsa_gains(k, iterations, sp)
    return np.asarray(vec, dtype=float) - a_k * np.asarray(grad_estimate, dtype=float)


def minimize_spsa(f, x0, iterations: int, sp: SpsaParams = SpsaParams(),
                  rng: np.random.Generator | None = None) -> np.ndarray:
    """Plain SPSA loop on a scalar objective.

    Each iteration perturbs the full vector by +/- c_k along a Rademacher
    direction, estimates the gradient from the two evaluations, and steps.
    The solver drives the same pieces with batched sampling costs.
    """
    rng = np.random.default_rng() if rng is None else rng
    vec = np.asarray(x0, dtype=float).copy()
    for k in range(iterations):
        a_k, c_k = spsa_gains(k, iterations, sp)
        delta = rng.integers(0, 2, size=vec.size) * 2.0 - 1.0
        ghat = (f(vec + c_k * delta) - f(vec - c_k * delta)) / (2.0 * c_k) * delta
        vec = vec - a_k * ghat
    return vec


@dataclass(frozen=True)
class TraceEntry:
    mean_cost: float
    min_cost: float
    max_cost: float


@dataclass(frozen=True)
class BbsRun:
    """Outcome of one training run.

    ``best_sample`` is the incumbent: the cheapest candidate seen anywhere
    in the run, perturbation batches included.  ``final_sample`` is one
    fresh draw from the trained parameters (kept separately because a single
    draw from a stochastic sampler need not reproduce the incumbent).
    """

    n_vars: int
    plan: TilingPlan
    trace: tuple[TraceEntry, ...]
    best_sample: tuple[int, ...]
    best_cost: float
    final_sample: tuple[int, ...]
    final_cost: float
    trained_vector: tuple[float, ...]
    circuit_run_count: int

    def to_dict(self) -> dict:
        return asdict(self)


def _gradient_blocks(plan: TilingPlan, config: BbsConfig, size: int) -> list[np.ndarray]:
    if not config.per_tile_gradients:
        return [np.arange(size)]
    apt = angles_per_tile(plan, config)
    blocks = [np.arange(t * apt, (t + 1) * apt) for t in range(plan.tile_count)]
    if config.bitflip_enabled:
        blocks.append(np.arange(plan.tile_count * apt, size))
    return [b for b in blocks if b.size] or [np.arange(size)]


def solve(q: QuboMatrix, config: BbsConfig) -> BbsRun:
    """Train the sampler against ``q`` and track the best candidate seen.

    One iteration is one SPSA update: a Rademacher perturbation applied to
    the full parameter vector, each side scored on a fresh batch (the
    optional per-tile mode perturbs one tile's block at a time instead,
    trading extra batches for per-tile gradient bookkeeping).  Every
    candidate drawn anywhere in the run is eligible to become the incumbent;
    ``circuit_run_count`` counts one tile-circuit execution per tile per
    drawn candidate.  Fully deterministic for a fixed config.
    """
    if q.n < 1:
        raise ValueError("q must have at least one variable")
    plan = plan_tiling(q.n, config.input_state)
    rng = np.random.default_rng(config.rng_seed)
    vec = pack_params(init_params(plan, config, rng))
    blocks = _gradient_blocks(plan, config, vec.size)

    best_x: tuple[int, ...] | None = None
    best_cost = math.inf
    trace: list[TraceEntry] = []
    runs = 0

    for k in range(config.iterations):
        _, c_k = spsa_gains(k, config.iterations, config.spsa)
        ghat = np.zeros_like(vec)
        results: list[BatchResult] = []
        for block in blocks:
            delta = np.zeros_like(vec)
            delta[block] = rng.integers(0, 2, size=block.size) * 2.0 - 1.0
            plus = batch_cost(q, unpack_params(vec + c_k * delta, plan, config), plan, config, rng)
            minus = batch_cost(q, unpack_params(vec - c_k * delta, plan, config), plan, config, rng)
            results += [plus, minus]
            ghat[block] += (plus.mean_cost - minus.mean_cost) / (2.0 * c_k) * delta[block]
        for r in results:
            runs += r.circuit_runs
            if r.best_cost < best_cost:
                best_cost, best_x = r.best_cost, r.best_x
        trace.append(
            TraceEntry(
                mean_cost=float(np.mean([r.mean_cost for r in results])),
                min_cost=min(r.best_cost for r in results),
                max_cost=max(r.max_cost for r in results),
            )
        )
        vec = spsa_step(vec, ghat, k, config.iterations, config.spsa)

    trained = unpack_params(vec, plan, config)
    final = draw_candidate(trained, plan, config, rng)
    runs += plan.tile_count
    final_cost = cost(q, final)
    final_sample = tuple(int(v) for v in final)
    if final_cost < best_cost:
        best_cost, best_x = final_cost, final_sample

    assert best_x is not None
    return BbsRun(
        n_vars=q.n,
        plan=plan,
        trace=tuple(trace),
        best_sample=best_x,
        best_cost=best_cost,
        final_sample=final_sample,
        final_cost=final_cost,
        trained_vector=tuple(float(v) for v in vec),
        circuit_run_count=runs,
    )


def quality(g: Graph, x, exact_cut: int) -> float:
    """Achieved cut as a fraction of the optimum, in [0, 1]."""
    if exact_cut < 1:
        raise ValueError("exact_cut must be >= 1; quality is undefined on cut-free graphs")
    return cut_size(g, x) / exact_cut
