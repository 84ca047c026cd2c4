"""Caller-to-agent assignment search over random-key encodings.

A candidate solution lives in [0, 1]^n; sorting its keys yields a permutation
(perm[i] = rank of key i, ties to the lower index), and the objective is the
summed service time of routing caller i to agent perm[i].  Small instances
can be checked against exhaustive enumeration.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .benchmarks import ObjectiveSpec
from .core import Bounds, as_vector
from .optimizers import RunConfig, RunResult, run

__all__ = [
    "CostMatrix",
    "Assignment",
    "CallTimeBreakdown",
    "decode_keys",
    "assignment_cost",
    "brute_force",
    "optimize_assignment",
    "call_handle_time",
    "call_center_matrix",
]

BRUTE_FORCE_LIMIT = 10


@dataclass(frozen=True)
class CostMatrix:
    """Square matrix of non-negative service seconds, callers by agents."""

    values: np.ndarray
    caller_labels: tuple = ()
    agent_labels: tuple = ()

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise ValueError("cost matrix must be square and non-empty")
        if not np.all(np.isfinite(v)):
            raise ValueError("cost matrix contains non-finite entries")
        if np.any(v < 0.0):
            raise ValueError("cost matrix entries must be non-negative")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        n = v.shape[0]
        callers = tuple(self.caller_labels) or tuple(f"C{i + 1}" for i in range(n))
        agents = tuple(self.agent_labels) or tuple(f"A{j + 1}" for j in range(n))
        if len(callers) != n or len(agents) != n:
            raise ValueError("label count does not match matrix size")
        object.__setattr__(self, "caller_labels", callers)
        object.__setattr__(self, "agent_labels", agents)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_csv(cls, path) -> "CostMatrix":
        """Read the layout written by to_csv: agent labels across the first
        row, caller labels down the first column."""
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r]
        if len(rows) < 2:
            raise ValueError("cost matrix CSV needs a header row and data rows")
        agents = tuple(rows[0][1:])
        callers = []
        data = []
        for r in rows[1:]:
            if len(r) != len(agents) + 1:
                raise ValueError("cost matrix CSV rows have inconsistent width")
            callers.append(r[0])
            try:
                data.append([float(c) for c in r[1:]])
            except ValueError as exc:
                raise ValueError(f"non-numeric cost cell: {exc}") from exc
        return cls(np.array(data), tuple(callers), agents)

    def to_csv(self, path) -> None:
        """Write in canonical form; integral seconds print without a decimal
        point, so canonical files round-trip byte-for-byte."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([""] + list(self.agent_labels))
            for label, row in zip(self.caller_labels, self.values):
                writer.writerow([label] + [_format_seconds(v) for v in row])


def _format_seconds(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


@dataclass(frozen=True)
class Assignment:
    """A permutation (caller i -> agent perm[i]) and its total seconds."""

    perm: tuple
    total_seconds: float

    def __post_init__(self):
        p = tuple(int(v) for v in self.perm)
        if sorted(p) != list(range(len(p))):
            raise ValueError("perm must be a permutation of 0..n-1")
        object.__setattr__(self, "perm", p)
        object.__setattr__(self, "total_seconds", float(self.total_seconds))

    def to_csv(self, matrix: CostMatrix, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["caller", "agent", "seconds"])
            for i, j in enumerate(self.perm):
                writer.writerow([
                    matrix.caller_labels[i],
                    matrix.agent_labels[j],
                    _format_seconds(matrix.values[i, j]),
                ])
            writer.writerow(["total", "", _format_seconds(self.total_seconds)])


def decode_keys(keys) -> tuple:
    """Rank each key ascending; equal keys rank by lower index."""
    k = as_vector(keys, name="keys")
    if k.size < 1:
        raise ValueError("keys must be non-empty")
    order = np.argsort(k, kind="stable")
    perm = np.empty(k.size, dtype=np.int64)
    perm[order] = np.arange(k.size)
    return tuple(int(v) for v in perm)


def assignment_cost(matrix: CostMatrix, perm) -> float:
    """Total seconds of routing caller i to agent perm[i]."""
    p = tuple(int(v) for v in perm)
    if sorted(p) != list(range(matrix.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return float(matrix.values[np.arange(matrix.n), list(p)].sum())


def brute_force(matrix: CostMatrix) -> Assignment:
    """Exhaustive minimum over all permutations; ties resolve to the
    lexicographically smallest permutation.  Guarded to n <= 10."""
    if matrix.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_LIMIT}")
    best_perm = None
    best_total = None
    for perm in itertools.permutations(range(matrix.n)):
        total = float(matrix.values[np.arange(matrix.n), list(perm)].sum())
        if best_total is None or total < best_total:
            best_perm, best_total = perm, total
    return Assignment(perm=best_perm, total_seconds=best_total)


def keys_objective(matrix: CostMatrix) -> ObjectiveSpec:
    """The random-key search space for a cost matrix: [0, 1]^n keys scored by
    the decoded permutation's total seconds."""
    rows = np.arange(matrix.n)
    values = matrix.values

    def fn(x):
        # inline decode_keys + assignment_cost, minus their input checks:
        # keys come straight from the optimizer and are always well formed
        order = np.argsort(x, kind="stable")
        perm = np.empty(x.size, dtype=np.int64)
        perm[order] = rows
        return float(values[rows, perm].sum())

    return ObjectiveSpec(
        name=f"assignment-{matrix.n}",
        dimension=matrix.n,
        bounds=Bounds.cube(0.0, 1.0, matrix.n),
        fn=fn,
        known_min=None,
    )


def optimize_assignment(matrix: CostMatrix, config: RunConfig):
    """Search the key space with the configured optimizer.

    Returns (Assignment, RunResult); the assignment re-derives its total from
    the matrix, so it always matches an exact recomputation.
    """
    result = run(config, objective=keys_objective(matrix))
    perm = decode_keys(result.best_position)
    total = assignment_cost(matrix, perm)
    return Assignment(perm=perm, total_seconds=total), result


@dataclass(frozen=True)
class CallTimeBreakdown:
    """Aggregate seconds spent on hold, talking, and in wrap-up."""

    hold_seconds: float
    call_seconds: float
    post_seconds: float
    total_calls: int

    def __post_init__(self):
        for name in ("hold_seconds", "call_seconds", "post_seconds"):
            v = float(getattr(self, name))
            if not (v >= 0.0):
                raise ValueError(f"{name} must be non-negative")
            object.__setattr__(self, name, v)
        if int(self.total_calls) < 1:
            raise ValueError("total_calls must be at least 1")
        object.__setattr__(self, "total_calls", int(self.total_calls))


def call_handle_time(breakdown: CallTimeBreakdown) -> float:
    """Average handling seconds per call: (hold + call + post) / calls."""
    return (breakdown.hold_seconds + breakdown.call_seconds
            + breakdown.post_seconds) / breakdown.total_calls


def call_center_matrix() -> CostMatrix:
    """The four-caller, four-agent service-time case study."""
    return CostMatrix(
        values=np.array([
            [540.0, 215.0, 221.0, 246.0],
            [848.0, 436.0, 542.0, 936.0],
            [324.0, 81.0, 288.0, 328.0],
            [775.0, 579.0, 157.0, 263.0],
        ]),
        caller_labels=("Caller Profile 1", "Caller Profile 2",
                       "Caller Profile 3", "Caller Profile 4"),
        agent_labels=("Agent 1", "Agent 2", "Agent 3", "Agent 4"),
    )
