import pytest

from template import OutputTemplate, render_output_name
from utils import file_stem, format_number


@pytest.mark.parametrize(
    "template, values, expected",
    [
        ("~{<sample_stem>}.decomposition.json", {"sample_stem": "run 1"}, "run 1.decomposition.json"),
        ("~{<sample_stem>}.json", {"sample_stem": "a/b"}, "a_b.json"),
        ("~{kind}-~{seed}.csv", {"kind": "with_array", "seed": 7}, "with_array-7.csv"),
        ('~{missing|"fallback"}.csv', {}, "fallback.csv"),
        ("~~{kind}.csv", {"kind": "x"}, "~{kind}.csv"),
    ],
)
def test_render(template, values, expected):
    assert render_output_name(template, **values) == expected


def test_unresolved_keys_are_kept():
    template = OutputTemplate('~{<sample_stem>}-~{kind|"any"}-~{seed}.csv')
    assert template.safe_substitute(sample_stem="a/b") == "a_b-any-~{seed}.csv"


def test_render_into_directory():
    assert render_output_name("~{kind}.csv", directory="out", kind="x") == "out/x.csv"


def test_unusable_name():
    with pytest.raises(ValueError):
        render_output_name("~{kind}", kind="")


@pytest.mark.parametrize(
    "value, text", [(0.1, "0.1"), (1e-300, "1e-300"), (3, "3"), (float("inf"), "inf"), (-0.0, "-0.0")]
)
def test_format_number(value, text):
    assert format_number(value) == text


def test_file_stem():
    assert file_stem("/data/samples/curve.csv") == "curve"
