"""Simulation of loop-based time-bin interferometers.

A device with N qumodes and k delay loops is logically a cascade of k full
layers of programmable two-mode couplers acting on adjacent mode pairs;
photon counting at the output defines a distribution over occupation
patterns.  Two independent routes compute that distribution:

* :func:`output_distribution` -- permanents of sub-matrices of the composed
  mode unitary (the default sampling backend), and
* :func:`evolve_state` -- direct evolution of the state vector in the Fock
  basis, one coupler at a time.

The routes share nothing beyond pattern enumeration and serve as mutual
correctness oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

# Refuse to enumerate output-pattern spaces larger than this.
PATTERN_SPACE_CAP = 2_000_000


class CapacityError(ValueError):
    """Enumerating this configuration would exceed :data:`PATTERN_SPACE_CAP`."""


@dataclass(frozen=True)
class FockState:
    """Photon occupation numbers, one entry per qumode."""

    occupations: tuple[int, ...]

    def __post_init__(self) -> None:
        occ = tuple(int(v) for v in self.occupations)
        if any(v < 0 for v in occ):
            raise ValueError(f"occupations must be non-negative, got {occ}")
        object.__setattr__(self, "occupations", occ)

    @property
    def total_photons(self) -> int:
        return sum(self.occupations)

    def __len__(self) -> int:
        return len(self.occupations)

    def __iter__(self) -> Iterator[int]:
        return iter(self.occupations)

    def __getitem__(self, i: int) -> int:
        return self.occupations[i]


@dataclass(frozen=True)
class InterferometerSpec:
    """Logical description of a single- or double-loop interferometer.

    Each loop contributes one full layer of couplers on the adjacent mode
    pairs (0,1), (1,2), ..., (N-2, N-1); the second layer follows the first
    one entirely.  ``thetas`` holds the coupler angles in application order,
    so a valid spec carries exactly ``loops * (modes - 1)`` of them.
    """

    modes: int
    loops: int
    thetas: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.modes < 1:
            raise ValueError("modes must be a positive integer")
        if self.loops not in (1, 2):
            raise ValueError(f"loops must be 1 or 2, got {self.loops}")
        thetas = tuple(float(t) for t in self.thetas)
        expected = self.loops * (self.modes - 1)
        if len(thetas) != expected:
            raise ValueError(
                f"expected {expected} coupler angles (loops * (modes - 1) = "
                f"{self.loops} * {self.modes - 1}), got {len(thetas)}"
            )
        object.__setattr__(self, "thetas", thetas)


def build_unitary(spec: InterferometerSpec) -> np.ndarray:
    """Compose the N x N mode matrix of the coupler cascade.

    Each coupler is the real rotation ``[[cos t, sin t], [-sin t, cos t]]``
    embedded on an adjacent mode pair.  The result maps input-mode
    amplitudes to output-mode amplitudes and is orthogonal by construction.
    """
    u = np.eye(spec.modes)
    angles = iter(spec.thetas)
    for _ in range(spec.loops):
        for m in range(spec.modes - 1):
            theta = next(angles)
            c, s = math.cos(theta), math.sin(theta)
            top = u[m].copy()
            u[m] = c * top + s * u[m + 1]
            u[m + 1] = -s * top + c * u[m + 1]
    return u


def photon_patterns(modes: int, photons: int) -> Iterator[tuple[int, ...]]:
    """Yield every occupation pattern of ``photons`` photons over ``modes``
    modes, in a fixed order (earlier modes filled first)."""
    if modes == 1:
        yield (photons,)
        return
    for head in range(photons, -1, -1):
        for tail in photon_patterns(modes - 1, photons - head):
            yield (head,) + tail


def pattern_space_size(modes: int, photons: int) -> int:
    return math.comb(photons + modes - 1, photons)


def permanent(mat: np.ndarray) -> float:
    """Permanent of a small square real matrix.

    Ryser's formula with Gray-code subset updates, O(n 2^n); fine for the
    desk-scale sub-matrices this package produces (n <= ~10).
    """
    n = mat.shape[0]
    if n == 0:
        return 1.0
    row_sums = np.zeros(n)
    total = 0.0
    gray = 0
    sign = 1  # (-1)^{|subset|}, updated incrementally
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        changed = new_gray ^ gray
        j = changed.bit_length() - 1
        if new_gray & changed:
            row_sums += mat[:, j]
        else:
            row_sums -= mat[:, j]
        sign = -sign
        gray = new_gray
        total += sign * row_sums.prod()
    if n % 2:
        total = -total
    return float(total)


def _coerce_state(state) -> FockState:
    return state if isinstance(state, FockState) else FockState(tuple(state))


def _check_input(modes: int, state: FockState) -> int:
    if len(state) != modes:
        raise ValueError(
            f"input state has {len(state)} modes, interferometer has {modes}"
        )
    photons = state.total_photons
    if photons == 0:
        raise ValueError("input state carries no photons")
    size = pattern_space_size(modes, photons)
    if size > PATTERN_SPACE_CAP:
        raise CapacityError(
            f"{size} output patterns exceed the cap of {PATTERN_SPACE_CAP}"
        )
    return photons


def output_distribution(u: np.ndarray, input_state) -> dict[FockState, float]:
    """Exact photon-counting distribution of ``u`` via permanents.

    For an input pattern s and output pattern t,
    ``P(t) = Perm(U[t, s])^2 / (prod_i s_i! * prod_j t_j!)`` where the
    sub-matrix repeats rows per output occupation and columns per input
    occupation.  All patterns with the input's photon number are returned,
    zero-probability ones included.
    """
    state = _coerce_state(input_state)
    modes = u.shape[0]
    photons = _check_input(modes, state)
    cols = np.repeat(np.arange(modes), state.occupations)
    in_norm = math.prod(math.factorial(v) for v in state.occupations)
    dist: dict[FockState, float] = {}
    for pattern in photon_patterns(modes, photons):
        rows = np.repeat(np.arange(modes), pattern)
        amp = permanent(u[np.ix_(rows, cols)])
        out_norm = math.prod(math.factorial(v) for v in pattern)
        dist[FockState(pattern)] = amp * amp / (in_norm * out_norm)
    return dist


@lru_cache(maxsize=None)
def _coupler_amplitudes(
    n_left: int, n_right: int, theta: float
) -> tuple[tuple[int, int, float], ...]:
    """Fock-basis matrix elements of one coupler on a two-mode sector.

    Returns the image of ``|n_left, n_right>`` as tuples
    ``(m_left, m_right, amplitude)``; the coupler conserves the local photon
    number ``n_left + n_right``.
    """
    c, s = math.cos(theta), math.sin(theta)
    total = n_left + n_right
    coeff = [0.0] * (total + 1)
    for i in range(n_left + 1):
        for j in range(n_right + 1):
            coeff[i + j] += (
                math.comb(n_left, i)
                * math.comb(n_right, j)
                * c ** (i + n_right - j)
                * s ** (n_left - i + j)
                * (-1) ** (n_left - i)
            )
    norm = math.factorial(n_left) * math.factorial(n_right)
    out = []
    for m_left, amp in enumerate(coeff):
        if amp == 0.0:
            continue
        m_right = total - m_left
        scale = math.sqrt(math.factorial(m_left) * math.factorial(m_right) / norm)
        out.append((m_left, m_right, amp * scale))
    return tuple(out)


def evolve_state(spec: InterferometerSpec, input_state) -> dict[FockState, float]:
    """Exact distribution by applying each coupler on the Fock basis.

    Fully independent of the permanent route in :func:`output_distribution`;
    same contract, same pattern set, probabilities agree to ~1e-12.
    """
    state = _coerce_state(input_state)
    photons = _check_input(spec.modes, state)
    amps: dict[tuple[int, ...], float] = {state.occupations: 1.0}
    angles = iter(spec.thetas)
    for _ in range(spec.loops):
        for m in range(spec.modes - 1):
            theta = next(angles)
            moved: dict[tuple[int, ...], float] = {}
            for pattern, amp in amps.items():
                for m_left, m_right, a in _coupler_amplitudes(
                    pattern[m], pattern[m + 1], theta
                ):
                    target = pattern[:m] + (m_left, m_right) + pattern[m + 2 :]
                    moved[target] = moved.get(target, 0.0) + amp * a
            amps = moved
    return {
        FockState(p): amps.get(p, 0.0) ** 2
        for p in photon_patterns(spec.modes, photons)
    }


def sample(spec: InterferometerSpec, input_state, shots: int, rng_seed: int) -> list[FockState]:
    """Draw i.i.d. output patterns; a fixed seed fixes the whole sequence."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    dist = output_distribution(build_unitary(spec), input_state)
    states = list(dist)
    probs = np.clip(np.array([dist[s] for s in states]), 0.0, None)
    probs /= probs.sum()
    rng = np.random.default_rng(rng_seed)
    picks = rng.choice(len(states), size=shots, p=probs)
    return [states[i] for i in picks]


def threshold_readout(pattern) -> tuple[int, ...]:
    """Collapse photon counts to bits: 1 wherever at least one photon landed."""
    return tuple(1 if v > 0 else 0 for v in pattern)
