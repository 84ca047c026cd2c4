"""Shared domain types for the bat-swarm optimizers.

Everything downstream (optimizers, benchmarks, assignment search) builds on
the small value types defined here: search-space bounds, per-bat state, the
incumbent best record, and a seeded random stream.  Bounds, AlgoParams and
IncumbentBest are frozen after construction and safe to share; SwarmState and
the BatStates it owns are mutated only by the loop that drives them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "RngStream",
    "Bounds",
    "AlgoParams",
    "BatState",
    "IncumbentBest",
    "SwarmState",
    "as_vector",
    "draw_frequency",
    "clamp_to_bounds",
    "init_swarm",
    "update_incumbent",
]

ACCEPTANCE_MODES = ("best", "self")
BOUNDARY_MODES = ("clamp",)


class RngStream:
    """Deterministic pseudo-random stream derived from a 64-bit seed.

    One instance drives one run end to end.  Identical seeds replay the
    identical draw sequence, so a run is reproducible from its seed alone.
    Instances are not thread-safe; give each concurrent run its own stream.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        """Draw from [low, high); scalar when size is None."""
        if size is None:
            return float(self._gen.uniform(low, high))
        return self._gen.uniform(low, high, size)

    def __repr__(self):
        return f"RngStream(seed={self.seed})"


def as_vector(values, dim: Optional[int] = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float64 array, checking length when given."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {v.shape}")
    if dim is not None and v.size != dim:
        raise ValueError(f"{name} has dimension {v.size}, expected {dim}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


@dataclass(frozen=True)
class Bounds:
    """Per-dimension box constraints with lower[j] < upper[j] everywhere."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = as_vector(self.lower, name="lower")
        hi = as_vector(self.upper, dim=lo.size, name="upper")
        if not np.all(lo < hi):
            raise ValueError("bounds require lower < upper in every dimension")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def cube(cls, low: float, high: float, dim: int) -> "Bounds":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dimension(self) -> int:
        return self.lower.size

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass(frozen=True)
class AlgoParams:
    """Knobs shared by both bat algorithms.

    f_min/f_max bound the frequency draw, alpha scales loudness down on every
    accepted move, gamma drives the pulse-rate recovery curve.  acceptance_mode
    picks what an accepted candidate must improve on: "best" gates against the
    swarm-best fitness, "self" against the bat's own current fitness.
    """

    f_min: float = 0.0
    f_max: float = 2.0
    alpha: float = 0.9
    gamma: float = 0.9
    loudness_init_range: tuple = (1.0, 2.0)
    pulse_init_range: tuple = (0.0, 1.0)
    acceptance_mode: str = "best"
    boundary_mode: str = "clamp"

    def __post_init__(self):
        if not (self.f_min < self.f_max):
            raise ValueError("require f_min < f_max")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError("alpha must lie in (0, 1]")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        a_lo, a_hi = self.loudness_init_range
        if not (0.0 < a_lo <= a_hi):
            raise ValueError("loudness_init_range must be positive and ordered")
        r_lo, r_hi = self.pulse_init_range
        if not (0.0 <= r_lo <= r_hi <= 1.0):
            raise ValueError("pulse_init_range must sit inside [0, 1]")
        if self.acceptance_mode not in ACCEPTANCE_MODES:
            raise ValueError(f"acceptance_mode must be one of {ACCEPTANCE_MODES}")
        if self.boundary_mode not in BOUNDARY_MODES:
            raise ValueError(f"boundary_mode must be one of {BOUNDARY_MODES}")


@dataclass
class BatState:
    """Mutable per-bat record owned by its SwarmState."""

    position: np.ndarray
    velocity: np.ndarray
    frequency: float
    loudness: float
    pulse_rate: float
    base_pulse_rate: float
    acceptance_count: int
    fitness: float

    def to_dict(self) -> dict:
        return {
            "position": [float(v) for v in self.position],
            "velocity": [float(v) for v in self.velocity],
            "frequency": float(self.frequency),
            "loudness": float(self.loudness),
            "pulse_rate": float(self.pulse_rate),
            "base_pulse_rate": float(self.base_pulse_rate),
            "acceptance_count": int(self.acceptance_count),
            "fitness": float(self.fitness),
        }


@dataclass(frozen=True)
class IncumbentBest:
    """Snapshot of the swarm-best solution plus the frequency and velocity it
    was moving with when recorded; replaced wholesale, never edited."""

    x_star: np.ndarray
    fitness_star: float
    f_star: float
    v_star: np.ndarray

    def __post_init__(self):
        x = as_vector(self.x_star, name="x_star").copy()
        v = as_vector(self.v_star, dim=x.size, name="v_star").copy()
        x.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "x_star", x)
        object.__setattr__(self, "v_star", v)
        object.__setattr__(self, "fitness_star", float(self.fitness_star))
        object.__setattr__(self, "f_star", float(self.f_star))

    def to_dict(self) -> dict:
        return {
            "x_star": [float(v) for v in self.x_star],
            "fitness_star": float(self.fitness_star),
            "f_star": float(self.f_star),
            "v_star": [float(v) for v in self.v_star],
        }


@dataclass
class SwarmState:
    """Whole-population state: the bats, the incumbent best, and the count of
    completed iterations.  Mutated by exactly one driver at a time."""

    bats: list
    best: IncumbentBest
    t: int = 0

    def positions(self) -> np.ndarray:
        return np.stack([b.position for b in self.bats])

    def mean_loudness(self) -> float:
        return float(np.mean([b.loudness for b in self.bats]))

    def to_dict(self) -> dict:
        return {
            "t": int(self.t),
            "best": self.best.to_dict(),
            "bats": [b.to_dict() for b in self.bats],
        }

    def to_json(self) -> str:
        """Canonical serialization; byte-stable for identical states."""
        return json.dumps(self.to_dict(), separators=(",", ":"))


def draw_frequency(beta: float, f_min: float, f_max: float) -> float:
    """Affine map of beta in [0, 1] onto [f_min, f_max]."""
    if not (0.0 <= beta <= 1.0):
        raise ValueError("beta must lie in [0, 1]")
    if not (f_min < f_max):
        raise ValueError("require f_min < f_max")
    return f_min + (f_max - f_min) * beta


def clamp_to_bounds(x: np.ndarray, bounds: Bounds) -> np.ndarray:
    """Coordinate-wise min(upper, max(lower, x)); the only boundary rule."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != bounds.lower.shape:
        raise ValueError(
            f"position has dimension {x.size}, bounds expect {bounds.dimension}"
        )
    return np.clip(x, bounds.lower, bounds.upper)


def init_swarm(objective, n: int, params: AlgoParams, rng: RngStream) -> SwarmState:
    """Build the iteration-zero population.

    Per bat, in index order, the stream is consumed as: position (one draw per
    dimension), frequency beta, loudness, base pulse rate, then the fitness
    evaluation (which draws only for noisy objectives).  Velocities start at
    zero and pulse_rate starts equal to base_pulse_rate.  The incumbent is the
    best initial bat; ties go to the lowest index.
    """
    if n < 2:
        raise ValueError("population size must be at least 2")
    bounds = objective.bounds
    dim = objective.dimension
    if bounds.dimension != dim:
        raise ValueError("objective bounds do not match its dimension")
    a_lo, a_hi = params.loudness_init_range
    r_lo, r_hi = params.pulse_init_range
    bats = []
    for _ in range(n):
        position = rng.uniform(bounds.lower, bounds.upper, size=dim)
        frequency = draw_frequency(rng.uniform(), params.f_min, params.f_max)
        loudness = rng.uniform(a_lo, a_hi)
        base_pulse = rng.uniform(r_lo, r_hi)
        fitness = objective.evaluate(position, rng)
        if not math.isfinite(fitness):
            raise RuntimeError(
                f"objective returned non-finite fitness {fitness!r} at init"
            )
        bats.append(
            BatState(
                position=position,
                velocity=np.zeros(dim),
                frequency=frequency,
                loudness=loudness,
                pulse_rate=base_pulse,
                base_pulse_rate=base_pulse,
                acceptance_count=0,
                fitness=fitness,
            )
        )
    best_idx = int(np.argmin([b.fitness for b in bats]))
    leader = bats[best_idx]
    best = IncumbentBest(
        x_star=leader.position.copy(),
        fitness_star=leader.fitness,
        f_star=leader.frequency,
        v_star=leader.velocity.copy(),
    )
    return SwarmState(bats=bats, best=best, t=0)


def update_incumbent(swarm: SwarmState) -> SwarmState:
    """Replace the incumbent from the best bat if it strictly improves.

    Ties among bats resolve to the lowest index; an exact tie with the
    incumbent leaves the incumbent in place.
    """
    best_idx = int(np.argmin([b.fitness for b in swarm.bats]))
    leader = swarm.bats[best_idx]
    if leader.fitness < swarm.best.fitness_star:
        swarm.best = IncumbentBest(
            x_star=leader.position.copy(),
            fitness_star=leader.fitness,
            f_star=leader.frequency,
            v_star=leader.velocity.copy(),
        )
    return swarm
