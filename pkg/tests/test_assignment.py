"""Random-key decoding, cost evaluation, and the assignment search."""

import math
from pathlib import Path

import numpy as np
import pytest

from batopt.assignment import (
    Assignment,
    CallTimeBreakdown,
    CostMatrix,
    assignment_cost,
    brute_force,
    call_center_matrix,
    call_handle_time,
    decode_keys,
    keys_objective,
    optimize_assignment,
)
from batopt.optimizers import RunConfig

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def exhaustive_min(values):
    """Independent oracle: depth-first enumeration, first-found tie wins."""
    n = len(values)
    best = {"total": math.inf, "perm": None}

    def extend(i, used, total, perm):
        if i == n:
            if total < best["total"]:
                best["total"], best["perm"] = total, tuple(perm)
            return
        for j in range(n):
            if j not in used:
                extend(i + 1, used | {j}, total + values[i][j], perm + [j])

    extend(0, frozenset(), 0.0, [])
    return best["perm"], best["total"]


# ---------------------------------------------------------------------------
# decode_keys


def test_decode_sorted_keys_is_identity():
    assert decode_keys([0.1, 0.2, 0.7]) == (0, 1, 2)


def test_decode_hand_example():
    assert decode_keys([0.9, 0.1, 0.5]) == (2, 0, 1)


def test_decode_equal_keys_break_by_index():
    assert decode_keys([0.5, 0.5, 0.5]) == (0, 1, 2)
    assert decode_keys([0.5, 0.2, 0.5]) == (1, 0, 2)


def test_decode_always_yields_a_permutation():
    rng = np.random.default_rng(2)
    for _ in range(50):
        keys = rng.uniform(size=rng.integers(1, 12))
        perm = decode_keys(keys)
        assert sorted(perm) == list(range(keys.size))


def test_decode_validation():
    with pytest.raises(ValueError):
        decode_keys([])
    with pytest.raises(ValueError):
        decode_keys([[0.1, 0.2]])


# ---------------------------------------------------------------------------
# cost matrix


def test_cost_matrix_defaults_and_freeze():
    m = CostMatrix(np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert m.n == 2
    assert m.caller_labels == ("C1", "C2")
    assert m.agent_labels == ("A1", "A2")
    with pytest.raises(ValueError):
        m.values[0, 0] = 9.0


@pytest.mark.parametrize(
    "values",
    [
        np.zeros((2, 3)),
        np.zeros((0, 0)),
        np.array([[1.0, -2.0], [3.0, 4.0]]),
        np.array([[1.0, float("nan")], [3.0, 4.0]]),
    ],
)
def test_cost_matrix_validation(values):
    with pytest.raises(ValueError):
        CostMatrix(values)


def test_cost_matrix_label_count_must_match():
    with pytest.raises(ValueError, match="label"):
        CostMatrix(np.ones((2, 2)), caller_labels=("only one",))


def test_cost_matrix_round_trip(tmp_path):
    path = tmp_path / "matrix.csv"
    m = call_center_matrix()
    m.to_csv(path)
    again = CostMatrix.from_csv(path)
    np.testing.assert_array_equal(again.values, m.values)
    assert again.caller_labels == m.caller_labels
    assert again.agent_labels == m.agent_labels
    second = tmp_path / "again.csv"
    again.to_csv(second)
    assert path.read_bytes() == second.read_bytes()


def test_cost_matrix_round_trip_fractional_seconds(tmp_path):
    path = tmp_path / "matrix.csv"
    m = CostMatrix(np.array([[1.5, 2.0], [3.0, 0.25]]))
    m.to_csv(path)
    np.testing.assert_array_equal(CostMatrix.from_csv(path).values, m.values)


def test_from_csv_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text(",A1\n")
    with pytest.raises(ValueError, match="header row and data rows"):
        CostMatrix.from_csv(empty)
    ragged = tmp_path / "ragged.csv"
    ragged.write_text(",A1,A2\nC1,1,2\nC2,3\n")
    with pytest.raises(ValueError, match="inconsistent width"):
        CostMatrix.from_csv(ragged)
    words = tmp_path / "words.csv"
    words.write_text(",A1,A2\nC1,1,2\nC2,3,often\n")
    with pytest.raises(ValueError, match="non-numeric"):
        CostMatrix.from_csv(words)


def test_shipped_case_study_file_matches_the_builtin(tmp_path):
    shipped = CostMatrix.from_csv(DATA_DIR / "call_center.csv")
    built = call_center_matrix()
    np.testing.assert_array_equal(shipped.values, built.values)
    assert shipped.caller_labels == built.caller_labels
    assert shipped.agent_labels == built.agent_labels


def test_case_study_values():
    m = call_center_matrix()
    expected = np.array([
        [540.0, 215.0, 221.0, 246.0],
        [848.0, 436.0, 542.0, 936.0],
        [324.0, 81.0, 288.0, 328.0],
        [775.0, 579.0, 157.0, 263.0],
    ])
    np.testing.assert_array_equal(m.values, expected)


# ---------------------------------------------------------------------------
# cost and enumeration


def test_assignment_cost_case_study_optimum():
    assert assignment_cost(call_center_matrix(), (3, 1, 0, 2)) == 1163.0


def test_assignment_cost_case_study_diagonal():
    assert assignment_cost(call_center_matrix(), (0, 1, 2, 3)) == 1527.0


def test_assignment_cost_zero_matrix():
    zero = CostMatrix(np.zeros((3, 3)))
    assert assignment_cost(zero, (2, 0, 1)) == 0.0


@pytest.mark.parametrize("perm", [(0, 0, 1, 2), (0, 1), (0, 1, 2, 4)])
def test_assignment_cost_rejects_non_permutations(perm):
    with pytest.raises(ValueError, match="permutation"):
        assignment_cost(call_center_matrix(), perm)


def test_brute_force_case_study():
    best = brute_force(call_center_matrix())
    assert best.total_seconds == 1163.0
    assert best.perm == (3, 1, 0, 2)


def test_brute_force_single_cell():
    best = brute_force(CostMatrix(np.array([[5.0]])))
    assert best.perm == (0,)
    assert best.total_seconds == 5.0


def test_brute_force_tie_takes_the_lexicographically_first_perm():
    best = brute_force(CostMatrix(np.ones((3, 3))))
    assert best.perm == (0, 1, 2)


def test_brute_force_refuses_large_instances():
    with pytest.raises(ValueError, match="n <= 10"):
        brute_force(CostMatrix(np.ones((11, 11))))


def test_brute_force_matches_the_independent_enumerator():
    rng = np.random.default_rng(6)
    for _ in range(20):
        n = int(rng.integers(1, 6))
        values = rng.integers(0, 1000, size=(n, n)).astype(float)
        got = brute_force(CostMatrix(values))
        perm, total = exhaustive_min(values.tolist())
        assert got.total_seconds == total
        assert got.perm == perm


# ---------------------------------------------------------------------------
# key-space objective and search


def test_keys_objective_shape():
    spec = keys_objective(call_center_matrix())
    assert spec.name == "assignment-4"
    assert spec.dimension == 4
    assert spec.bounds.lower.tolist() == [0.0] * 4
    assert spec.bounds.upper.tolist() == [1.0] * 4


def test_keys_objective_agrees_with_decode_plus_cost():
    matrix = call_center_matrix()
    spec = keys_objective(matrix)
    rng = np.random.default_rng(9)
    for _ in range(200):
        keys = rng.uniform(size=4)
        assert spec.evaluate(keys) == assignment_cost(matrix, decode_keys(keys))


def test_optimize_assignment_finds_a_tiny_optimum():
    matrix = CostMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    cfg = RunConfig(algorithm="MBA", objective="keys", dimension=2,
                    population=4, iterations=20, seed=1)
    found, result = optimize_assignment(matrix, cfg)
    assert found.total_seconds == 0.0
    assert found.perm == (0, 1)
    assert result.best_fitness == 0.0


def test_optimize_assignment_never_beats_the_oracle():
    rng = np.random.default_rng(14)
    for seed in range(5):
        n = int(rng.integers(2, 6))
        matrix = CostMatrix(rng.integers(0, 500, size=(n, n)).astype(float))
        oracle = brute_force(matrix)
        cfg = RunConfig(algorithm="MBA", objective="keys", dimension=n,
                        population=8, iterations=30, seed=seed)
        found, _ = optimize_assignment(matrix, cfg)
        assert found.total_seconds >= oracle.total_seconds
        assert found.total_seconds == assignment_cost(matrix, found.perm)


# ---------------------------------------------------------------------------
# assignment record


def test_assignment_rejects_bad_perms():
    with pytest.raises(ValueError, match="permutation"):
        Assignment(perm=(0, 0), total_seconds=1.0)


def test_assignment_csv_layout(tmp_path):
    matrix = call_center_matrix()
    best = brute_force(matrix)
    path = tmp_path / "assignment.csv"
    best.to_csv(matrix, path)
    assert path.read_text() == (
        "caller,agent,seconds\n"
        "Caller Profile 1,Agent 4,246\n"
        "Caller Profile 2,Agent 2,436\n"
        "Caller Profile 3,Agent 1,324\n"
        "Caller Profile 4,Agent 3,157\n"
        "total,,1163\n"
    )


# ---------------------------------------------------------------------------
# handle time


def test_call_handle_time_case_study():
    assert call_handle_time(CallTimeBreakdown(0, 1163, 0, 4)) == 290.75


def test_call_handle_time_zero():
    assert call_handle_time(CallTimeBreakdown(0, 0, 0, 3)) == 0.0


def test_call_handle_time_hand_value():
    assert call_handle_time(CallTimeBreakdown(60, 120, 60, 2)) == 120.0


def test_call_time_breakdown_validation():
    with pytest.raises(ValueError, match="non-negative"):
        CallTimeBreakdown(-1, 0, 0, 1)
    with pytest.raises(ValueError, match="at least 1"):
        CallTimeBreakdown(0, 0, 0, 0)
