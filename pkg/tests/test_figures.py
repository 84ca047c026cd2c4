"""Figure rendering: valid PNG files, deterministic bytes."""

from batopt import figures
from batopt.analysis import xpl_xpt

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

HISTORIES = {
    "BA": [[9.0, 5.0, 4.0, 4.0], [8.0, 6.0, 3.0, 2.0]],
    "MBA": [[7.0, 2.0, 1.0, 0.5], [6.0, 3.0, 0.8, 0.4]],
}


def read_png(path):
    data = path.read_bytes()
    assert data.startswith(PNG_MAGIC)
    assert len(data) > 1000
    return data


def test_convergence_figure(tmp_path):
    out = tmp_path / "conv.png"
    figures.convergence_figure(HISTORIES, "F1", out)
    read_png(out)


def test_convergence_figure_handles_non_positive_values(tmp_path):
    out = tmp_path / "conv.png"
    figures.convergence_figure({"MBA": [[3.0, -1.0, -1.0]]}, "F16", out)
    read_png(out)


def test_diversity_figure(tmp_path):
    series = {
        "BA": xpl_xpt([4.0, 3.0, 1.0]),
        "MBA": xpl_xpt([4.0, 2.0, 0.5]),
    }
    out = tmp_path / "div.png"
    figures.diversity_figure(series, "F9", out)
    read_png(out)


def test_assignment_figure_with_and_without_oracle(tmp_path):
    histories = [("MBA seed 1", [2000.0, 1500.0, 1163.0]),
                 ("MBA seed 2", [1900.0, 1200.0, 1163.0])]
    with_oracle = tmp_path / "a.png"
    without = tmp_path / "b.png"
    figures.assignment_figure(histories, 1163.0, with_oracle)
    figures.assignment_figure(histories, None, without, title="no oracle")
    read_png(with_oracle)
    read_png(without)


def test_renders_are_byte_identical(tmp_path):
    first = tmp_path / "one.png"
    second = tmp_path / "two.png"
    figures.convergence_figure(HISTORIES, "F1", first)
    figures.convergence_figure(HISTORIES, "F1", second)
    assert first.read_bytes() == second.read_bytes()
