"""Bat-swarm optimization loops.

Two candidate rules are provided.  "BA" is the standard echolocation update:

    f_i = f_min + (f_max - f_min) * beta
    v'  = v + (x - x*) * f_i
    x'  = x + v'

"MBA" replaces the position update with one anchored to the incumbent,
reusing the frequency f* and velocity v* the incumbent was recorded with:

    v'  = v * f_i - v* f* + (x - x*) * f*
    x'  = x* + v' * f*

Both share the pulse-rate-gated local walk around the incumbent, the
loudness-gated acceptance test, loudness decay A <- alpha * A, and pulse-rate
recovery r <- r0 * (1 - exp(-gamma * t)).

Per bat, per iteration, the random stream is consumed in a fixed order:
frequency beta, the walk gate, the walk offsets (walk iterations only), any
objective noise, then the acceptance draw.  Candidate rules and the walk read
the incumbent snapshot taken at the start of the iteration; the acceptance
test compares against the live incumbent, which MBA may improve mid-sweep.
A walk candidate replaces the proposed position but leaves the bat's flight
state alone, so a bat only changes position, velocity, or frequency when it
accepts.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import benchmarks
from .analysis import diversity
from .core import (
    AlgoParams,
    Bounds,
    IncumbentBest,
    RngStream,
    SwarmState,
    clamp_to_bounds,
    draw_frequency,
    init_swarm,
    update_incumbent,
)

__all__ = [
    "ALGORITHMS",
    "Candidate",
    "RunConfig",
    "RunResult",
    "ba_step",
    "mba_step",
    "ba_candidate",
    "mba_candidate",
    "local_walk",
    "updated_pulse_rate",
    "acceptance_step",
    "step_swarm",
    "run",
    "write_history_csv",
]

ALGORITHMS = ("BA", "MBA")


class Candidate(NamedTuple):
    position: np.ndarray
    velocity: np.ndarray
    frequency: float


def ba_step(position, velocity, x_star, f_i):
    """Standard velocity/position update; returns (v', pre-clamp x')."""
    v_new = velocity + (position - x_star) * f_i
    return v_new, position + v_new


def mba_step(position, velocity, incumbent: IncumbentBest, f_i):
    """Incumbent-anchored update; returns (v', pre-clamp x').

    A bat sitting exactly on the incumbent with f_i = f* reproduces x*
    exactly: the v* f* terms cancel and the (x - x*) term is zero.
    """
    v_new = (velocity * f_i
             - incumbent.v_star * incumbent.f_star
             + (position - incumbent.x_star) * incumbent.f_star)
    return v_new, incumbent.x_star + v_new * incumbent.f_star


def ba_candidate(bat, incumbent, params, bounds, rng) -> Candidate:
    """Draw a frequency and build the standard candidate, clamped to bounds."""
    f_i = draw_frequency(rng.uniform(), params.f_min, params.f_max)
    v_new, raw = ba_step(bat.position, bat.velocity, incumbent.x_star, f_i)
    return Candidate(clamp_to_bounds(raw, bounds), v_new, f_i)


def mba_candidate(bat, incumbent, params, bounds, rng) -> Candidate:
    """Draw a frequency and build the incumbent-anchored candidate."""
    f_i = draw_frequency(rng.uniform(), params.f_min, params.f_max)
    v_new, raw = mba_step(bat.position, bat.velocity, incumbent, f_i)
    return Candidate(clamp_to_bounds(raw, bounds), v_new, f_i)


def local_walk(incumbent, mean_loudness, bounds, rng) -> np.ndarray:
    """Step away from the incumbent by per-dimension uniform [-1, 1) offsets
    scaled by the population's average loudness."""
    eps = rng.uniform(-1.0, 1.0, size=incumbent.x_star.size)
    return clamp_to_bounds(incumbent.x_star + eps * mean_loudness, bounds)


def updated_pulse_rate(base_pulse_rate, gamma, t):
    """Pulse rate after an acceptance at iteration t."""
    return base_pulse_rate * (1.0 - math.exp(-gamma * t))


def acceptance_step(bat, candidate: Candidate, candidate_fitness, incumbent,
                    params, rng, t, adopt_best=False):
    """Loudness-gated accept/reject of an evaluated candidate.

    Acceptance requires the acceptance draw to fall below the bat's loudness
    AND the candidate to improve on the gate fitness (the live incumbent's in
    "best" mode, the bat's own in "self" mode).  An accepted bat adopts the
    candidate position, fitness, velocity, and frequency; its loudness decays
    by alpha and its pulse rate is recomputed from the iteration index.  A
    rejected bat is left untouched.  With adopt_best=True an accepted
    improvement on the incumbent is recorded immediately, carrying the bat's
    new flight state with it.  Returns (accepted, incumbent).
    """
    u = rng.uniform()
    gate = incumbent.fitness_star if params.acceptance_mode == "best" else bat.fitness
    accepted = (u < bat.loudness) and (candidate_fitness < gate)
    if accepted:
        bat.velocity = candidate.velocity
        bat.frequency = candidate.frequency
        bat.position = candidate.position
        bat.fitness = candidate_fitness
        bat.loudness = params.alpha * bat.loudness
        bat.pulse_rate = updated_pulse_rate(bat.base_pulse_rate, params.gamma, t)
        bat.acceptance_count += 1
        if adopt_best and candidate_fitness < incumbent.fitness_star:
            incumbent = IncumbentBest(
                x_star=bat.position.copy(),
                fitness_star=candidate_fitness,
                f_star=bat.frequency,
                v_star=bat.velocity.copy(),
            )
    return accepted, incumbent


def step_swarm(swarm: SwarmState, objective, params: AlgoParams, rng: RngStream,
               algorithm: str) -> float:
    """Advance the swarm one iteration in place; returns the new best fitness.

    Every bat position is inside the objective's bounds afterwards, and the
    best fitness never increases from one call to the next.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"algorithm must be one of {ALGORITHMS}")
    make_candidate = mba_candidate if algorithm == "MBA" else ba_candidate
    adopt_best = algorithm == "MBA"
    bounds = objective.bounds
    t = swarm.t + 1
    snapshot = swarm.best
    mean_loudness = swarm.mean_loudness()
    live = swarm.best
    for i, bat in enumerate(swarm.bats):
        cand = make_candidate(bat, snapshot, params, bounds, rng)
        if rng.uniform() > bat.pulse_rate:
            # The walk proposes a position only; it is not a flight, so the
            # bat's velocity and frequency ride along unchanged.
            cand = Candidate(local_walk(snapshot, mean_loudness, bounds, rng),
                             bat.velocity, bat.frequency)
        fitness = objective.evaluate_clamped(cand.position, rng)
        if not math.isfinite(fitness):
            raise RuntimeError(
                f"objective {objective.name} returned non-finite fitness "
                f"{fitness!r} for bat {i} at iteration {t}"
            )
        _, live = acceptance_step(bat, cand, fitness, live, params, rng, t,
                                  adopt_best=adopt_best)
    swarm.best = live
    update_incumbent(swarm)
    swarm.t = t
    return swarm.best.fitness_star


@dataclass(frozen=True)
class RunConfig:
    """One seeded run: algorithm, objective, sizes, and parameters."""

    algorithm: str
    objective: str
    dimension: Optional[int] = None
    population: int = 30
    iterations: int = 500
    seed: int = 0
    params: AlgoParams = field(default_factory=AlgoParams)
    record_diversity: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        if self.population < 2:
            raise ValueError("population size must be at least 2")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")


@dataclass
class RunResult:
    """Outcome of one run.

    history[t] is the best fitness after iteration t+1 (non-increasing).
    diversity_history, when recorded, is the population diversity at the same
    instants.  wall_time_seconds is measurement, not payload: it is excluded
    from payload() so deterministic comparisons ignore it.
    """

    best_position: np.ndarray
    best_fitness: float
    history: list
    diversity_history: Optional[list]
    wall_time_seconds: float
    final_swarm: SwarmState

    def payload(self) -> dict:
        return {
            "best_position": [float(v) for v in self.best_position],
            "best_fitness": float(self.best_fitness),
            "history": [float(v) for v in self.history],
            "diversity_history": (
                None if self.diversity_history is None
                else [float(v) for v in self.diversity_history]
            ),
            "final_swarm": self.final_swarm.to_dict(),
        }


def run(config: RunConfig, objective=None) -> RunResult:
    """Execute one seeded run and return its result.

    The objective is resolved from the registry unless one is passed in.
    Identical configs give identical results; runs with different seeds are
    independent and safe to execute concurrently.
    """
    if objective is None:
        objective = benchmarks.lookup(config.objective, config.dimension)
    started = time.perf_counter()
    rng = RngStream(config.seed)
    swarm = init_swarm(objective, config.population, config.params, rng)
    history = []
    div_history = [] if config.record_diversity else None
    for _ in range(config.iterations):
        best = step_swarm(swarm, objective, config.params, rng, config.algorithm)
        history.append(best)
        if div_history is not None:
            div_history.append(diversity(swarm.positions()))
    elapsed = time.perf_counter() - started
    return RunResult(
        best_position=swarm.best.x_star.copy(),
        best_fitness=swarm.best.fitness_star,
        history=history,
        diversity_history=div_history,
        wall_time_seconds=elapsed,
        final_swarm=swarm,
    )


def write_history_csv(result: RunResult, path, header_note: str = "") -> None:
    """Write per-iteration rows (t, best_fitness, div); div is blank when the
    run did not record diversity."""
    with open(path, "w", newline="") as fh:
        if header_note:
            fh.write(f"# {header_note}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "best_fitness", "div"])
        divs = result.diversity_history
        for i, best in enumerate(result.history):
            div = "" if divs is None else repr(float(divs[i]))
            writer.writerow([i + 1, repr(float(best)), div])
