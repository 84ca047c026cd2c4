"""End-to-end command tests, run in process through main()."""

import csv
import json
import sys
from pathlib import Path

import pytest

from batopt.analysis import significance_label
from batopt.cli import OUT_DIR_ENV, UsageError, entrypoint, main

DATA_DIR = Path(__file__).resolve().parents[1] / "data"
CASE_STUDY = DATA_DIR / "call_center.csv"


def read_summary_rows(out_dir):
    lines = (Path(out_dir) / "summary.csv").read_text().splitlines()
    assert lines[0].startswith("# ")
    return list(csv.DictReader(lines[1:]))


def dir_snapshot(path):
    return {p.name: p.read_bytes() for p in sorted(Path(path).iterdir())}


# ---------------------------------------------------------------------------
# list


def test_list_prints_the_whole_registry(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 24
    assert out[0].startswith("name")
    assert out[1].startswith("F1 ")
    assert out[-1].startswith("F23")


def test_list_json_matches_the_table(capsys):
    assert main(["list", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == 23
    names = {entry["name"] for entry in payload}
    assert names == {f"F{i}" for i in range(1, 24)}
    f1 = next(e for e in payload if e["name"] == "F1")
    assert f1 == {"name": "F1", "dimensions": "scalable",
                  "bounds": "[-100, 100]^30", "known_min": 0.0}


def test_list_is_repeatable(capsys):
    main(["list"])
    first = capsys.readouterr().out
    main(["list"])
    assert capsys.readouterr().out == first


# ---------------------------------------------------------------------------
# wilcoxon


def test_wilcoxon_command(tmp_path, capsys):
    samples = tmp_path / "samples.csv"
    samples.write_text("ba,mba\n1,4\n2,5\n3,6\n")
    assert main(["wilcoxon", str(samples)]) == 0
    assert capsys.readouterr().out.strip() == "0.1"


def test_wilcoxon_uneven_columns(tmp_path, capsys):
    samples = tmp_path / "samples.csv"
    samples.write_text("1,4\n2,5\n3,6\n7,\n")
    assert main(["wilcoxon", str(samples)]) == 0
    capsys.readouterr()


def test_wilcoxon_missing_file(capsys):
    assert main(["wilcoxon", "no-such-file.csv"]) == 2
    assert "not found" in capsys.readouterr().err


def test_wilcoxon_non_numeric_cell(tmp_path, capsys):
    samples = tmp_path / "samples.csv"
    samples.write_text("1,4\n2,oops\n3,6\n")
    assert main(["wilcoxon", str(samples)]) == 2
    assert "not a number" in capsys.readouterr().err


def test_wilcoxon_small_samples(tmp_path, capsys):
    samples = tmp_path / "samples.csv"
    samples.write_text("1,4\n2,5\n")
    assert main(["wilcoxon", str(samples)]) == 2
    assert "at least 3" in capsys.readouterr().err


def test_wilcoxon_exact_with_ties(tmp_path, capsys):
    samples = tmp_path / "samples.csv"
    samples.write_text("1,1\n2,5\n3,6\n")
    assert main(["wilcoxon", str(samples), "--method", "exact"]) == 2
    assert "tie-free" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# run


def run_flags(out_dir, **overrides):
    flags = {
        "--algo": "BA,MBA",
        "--fn": "F16",
        "--pop": "6",
        "--iters": "12",
        "--runs": "3",
        "--seed": "5",
        "--emit": "summary,history,diversity,pvalues",
        "--out": str(out_dir),
    }
    flags.update(overrides)
    argv = ["run"]
    for key, value in flags.items():
        if value is None:
            argv.append(key)    # bare flag, no argument
        else:
            argv.extend([key, value])
    return argv


def test_run_emits_the_full_artifact_set(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(run_flags(out)) == 0
    names = {p.name for p in out.iterdir()}
    assert names == {
        "summary.csv", "summary.json", "diversity.csv", "pvalues.csv",
        "history_F16_BA_s5.csv", "history_F16_BA_s6.csv",
        "history_F16_BA_s7.csv",
        "history_F16_MBA_s5.csv", "history_F16_MBA_s6.csv",
        "history_F16_MBA_s7.csv",
        "convergence_F16.png", "diversity_F16.png",
    }
    stdout = capsys.readouterr().out
    assert "function" in stdout
    assert "F16" in stdout
    assert "6 runs in" in stdout


def test_run_summary_label_is_self_consistent(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(run_flags(out)) == 0
    capsys.readouterr()
    (row,) = read_summary_rows(out)
    assert row["function"] == "F16"
    recomputed = significance_label(float(row["mba_mean"]), float(row["ba_mean"]))
    assert row["label"] == recomputed
    assert 0.0 < float(row["p_value"]) <= 1.0


def test_run_summary_json_mirrors_the_csv(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(run_flags(out)) == 0
    capsys.readouterr()
    payload = json.loads((out / "summary.json").read_text())
    assert payload["config"]["runs"] == 3
    assert payload["config"]["base_seed"] == 5
    assert payload["config"]["seed_rule"] == "run N uses seed base+N"
    (row,) = payload["rows"]
    (csv_row,) = read_summary_rows(out)
    assert row["function"] == "F16"
    assert row["ba_mean"] == float(csv_row["ba_mean"])
    assert row["label"] == csv_row["label"]


def test_run_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(run_flags(a)) == 0
    assert main(run_flags(b)) == 0
    capsys.readouterr()
    assert dir_snapshot(a) == dir_snapshot(b)


def test_run_default_emit_is_summary_only(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", "--fn", "F16", "--pop", "5", "--iters", "5",
                 "--runs", "2", "--out", str(out), "--no-plots"]) == 0
    capsys.readouterr()
    assert {p.name for p in out.iterdir()} == {"summary.csv", "summary.json"}


def test_run_no_plots_skips_the_figures(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(run_flags(out, **{"--no-plots": None})) == 0
    capsys.readouterr()
    assert not [p for p in out.iterdir() if p.suffix == ".png"]


def test_run_single_algorithm_single_run_leaves_blanks(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", "--algo", "MBA", "--fn", "F16", "--pop", "5",
                 "--iters", "5", "--runs", "1", "--out", str(out),
                 "--no-plots"]) == 0
    capsys.readouterr()
    (row,) = read_summary_rows(out)
    assert row["ba_mean"] == ""
    assert row["mba_mean"] != ""
    assert row["mba_std"] == ""
    assert row["p_value"] == ""
    assert row["label"] == ""


def test_run_honors_the_output_env_var(tmp_path, capsys, monkeypatch):
    target = tmp_path / "from-env"
    monkeypatch.setenv(OUT_DIR_ENV, str(target))
    assert main(["run", "--fn", "F16", "--pop", "5", "--iters", "5",
                 "--runs", "1", "--no-plots"]) == 0
    capsys.readouterr()
    assert (target / "summary.csv").exists()


def test_run_dimension_flag_applies_to_scalable_objectives(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", "--fn", "F1", "--dim", "3", "--pop", "5",
                 "--iters", "4", "--runs", "1", "--emit", "summary,history",
                 "--out", str(out), "--no-plots", "--algo", "BA"]) == 0
    capsys.readouterr()
    assert (out / "history_F1_BA_s1.csv").exists()


@pytest.mark.parametrize(
    "argv, message",
    [
        (["run", "--fn", "F99"], "unknown objective"),
        (["run", "--fn", "F16:3"], "fixed dimension"),
        (["run", "--fn", "F1:x"], "bad dimension"),
        (["run", "--fn", "F1", "--runs", "0"], "--runs"),
        (["run", "--fn", "F1", "--pop", "1"], "--pop"),
        (["run", "--fn", "F1", "--emit", "summary,bogus"], "emit"),
        (["run", "--fn", "F1", "--algo", "XX"], "unknown algorithm"),
    ],
)
def test_run_usage_errors(argv, message, capsys):
    assert main(argv) == 2
    assert message in capsys.readouterr().err


def test_run_failure_exits_one(tmp_path, capsys, monkeypatch):
    def explode(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr("batopt.cli.run", explode)
    assert main(run_flags(tmp_path / "out")) == 1
    assert "failed: boom" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# assign


def test_assign_case_study_report(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["assign", str(CASE_STUDY), "--pop", "20", "--iters", "120",
                 "--runs", "2", "--seed", "1", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "achieved total:" in stdout
    assert "exhaustive optimum: 1163 s" in stdout
    assert "optimum reached in" in stdout
    names = {p.name for p in out.iterdir()}
    assert names == {"assignment.csv", "assignment.png",
                     "history_assign_MBA_s1.csv", "history_assign_MBA_s2.csv"}
    lines = (out / "assignment.csv").read_text().splitlines()
    assert lines[0] == "caller,agent,seconds"
    assert lines[-1].startswith("total,,")


def test_assign_single_cell_matrix(tmp_path, capsys):
    matrix = tmp_path / "one.csv"
    matrix.write_text(",Desk\nOnly caller,5\n")
    out = tmp_path / "out"
    assert main(["assign", str(matrix), "--iters", "3", "--out", str(out),
                 "--no-plots"]) == 0
    stdout = capsys.readouterr().out
    assert "Only caller -> Desk (5 s)" in stdout
    assert "(gap 0)" in stdout
    assert "optimum reached in 1/1 runs" in stdout


def test_assign_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for target in (a, b):
        assert main(["assign", str(CASE_STUDY), "--pop", "10", "--iters",
                     "40", "--runs", "2", "--out", str(target)]) == 0
    capsys.readouterr()
    assert dir_snapshot(a) == dir_snapshot(b)


def test_assign_rejects_negative_cells(tmp_path, capsys):
    matrix = tmp_path / "bad.csv"
    matrix.write_text(",A1,A2,A3\nC1,1,2,3\nC2,4,-5,6\nC3,7,8,9\n")
    assert main(["assign", str(matrix)]) == 2
    assert "bad cost matrix" in capsys.readouterr().err


def test_assign_missing_file(capsys):
    assert main(["assign", "nowhere.csv"]) == 2
    assert "not found" in capsys.readouterr().err


def test_assign_with_the_standard_update_rule(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["assign", str(CASE_STUDY), "--algo", "BA", "--pop", "10",
                 "--iters", "30", "--out", str(out), "--no-plots"]) == 0
    capsys.readouterr()
    assert (out / "history_assign_BA_s1.csv").exists()


# ---------------------------------------------------------------------------
# entry point


def test_console_entrypoint_raises_systemexit(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["batopt", "list"])
    with pytest.raises(SystemExit) as exc:
        entrypoint()
    assert exc.value.code == 0
    capsys.readouterr()
