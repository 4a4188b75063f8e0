import json
import logging

import numpy as np
import pytest

from const import APPLICATION
from errors import DecompositionFileError, SampleError
from fileio import (
    format_plot_data,
    format_sample,
    parse_sample,
    read_decomposition,
    read_sample,
    write_decomposition,
    write_plot_data,
    write_sample,
)
from pipeline import approximate_decompose, refine, residual_report


def test_parse_with_and_without_header():
    with_header = parse_sample("x,y,f\n0,0,1\n0.5,0.25,-2\n")
    without = parse_sample("0,0,1\n0.5,0.25,-2\n")
    assert with_header.coords.tolist() == without.coords.tolist() == [[0.0, 0.0], [0.5, 0.25]]
    assert with_header.values.tolist() == [1.0, -2.0]


def test_blank_lines_are_skipped():
    sample = parse_sample("\n0,0,1\n\n1,1,2\n")
    assert len(sample) == 2


def test_bad_rows_are_reported():
    with pytest.raises(SampleError) as info:
        parse_sample("x,y,f\n0,0,1\n0,1\n0,a,2\n")
    assert info.value.rows == (3, 4)


def test_non_finite_rows():
    with pytest.raises(SampleError) as info:
        parse_sample("0,0,1\n1,1,nan\n2,2,inf\n")
    assert info.value.rows == (2, 3)


def test_duplicate_points(caplog):
    with caplog.at_level(logging.WARNING, logger=APPLICATION), pytest.raises(SampleError) as info:
        parse_sample("x,y,f\n0,0,1\n1,0,1\n0,0,2\n")
    assert info.value.rows == (4,)
    assert "duplicate" in caplog.text


def test_empty_file():
    with pytest.raises(SampleError):
        parse_sample("x,y,f\n")


def test_missing_file(tmp_path):
    with pytest.raises(SampleError):
        read_sample(tmp_path / "absent.csv")


def test_sample_file_round_trip(tmp_path, curve_sample):
    path = write_sample(tmp_path / "nested" / "curve.csv", curve_sample)
    text = path.read_text(encoding="utf-8")
    assert text.startswith("x,y,f\n")
    assert text == format_sample(curve_sample)
    again = read_sample(path)
    assert np.array_equal(again.coords, curve_sample.coords)
    assert np.array_equal(again.values, curve_sample.values)


def test_decomposition_file_round_trip(tmp_path, mixed_sample):
    d = approximate_decompose(mixed_sample, 0.25)
    path = write_decomposition(tmp_path / "mixed.json", d, residual_report(mixed_sample, d))
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["meta"]["n"] == 3
    assert data["g"]["tails"] == "constant"
    assert data["report"]["iterations"] == 1
    assert read_decomposition(path) == d


def test_refined_history_survives(tmp_path, curve_sample):
    d = refine(curve_sample, 0.05)
    path = write_decomposition(tmp_path / "curve.json", d)
    again = read_decomposition(path)
    assert again.meta.history == d.meta.history
    assert again == d


def test_unrefined_meta_survives(tmp_path, zero_sample):
    d = refine(zero_sample, 0.1)
    assert read_decomposition(write_decomposition(tmp_path / "zero.json", d)) == d


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"meta": {}}',
        '{"meta": {"n": 1, "epsilon": 0.1, "delta": 0.1, "F": 1, "iterations": 1, '
        '"sup_residual": 0}, "g": {"breakpoints": [1, 0], "values": [0, 0]}, '
        '"h": {"breakpoints": [0], "values": [0]}}',
    ],
)
def test_malformed_decompositions(tmp_path, text):
    path = tmp_path / "broken.json"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DecompositionFileError):
        read_decomposition(path)


def test_missing_decomposition(tmp_path):
    with pytest.raises(DecompositionFileError):
        read_decomposition(tmp_path / "absent.json")


def test_plot_data_blocks(tmp_path, mixed_sample):
    d = approximate_decompose(mixed_sample, 0.25)
    text = format_plot_data(d, mixed_sample)
    blocks = text.rstrip("\n").split("\n\n")
    assert [block.splitlines()[0] for block in blocks] == ["# g", "# h", "# residual"]
    assert blocks[2].splitlines()[1] == "x\ty\tf\tresidual"
    assert len(blocks[2].splitlines()) == 2 + len(mixed_sample)
    assert len(blocks[0].splitlines()) == 2 + len(d.g)
    first = blocks[2].splitlines()[2].split("\t")
    assert [float(cell) for cell in first[:3]] == [0.0, 0.0, -1.0]
    path = write_plot_data(tmp_path / "plot.tsv", d, mixed_sample)
    assert path.read_text(encoding="utf-8") == text
