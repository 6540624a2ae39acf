import numpy as np
import pytest

from opnorm.matio import (
    MatrixParseError,
    format_complex_token,
    parse_complex_token,
    read_matrix,
    write_matrix,
)


def test_complex_tokens():
    assert parse_complex_token("1.5") == 1.5
    assert parse_complex_token("-2") == -2.0
    assert parse_complex_token("1+2i") == 1 + 2j
    assert parse_complex_token("1.5-0.25i") == 1.5 - 0.25j
    assert parse_complex_token(" 3i ") == 3j
    assert parse_complex_token("-i") == -1j
    for bad in ("", "abc", "1+2", "1i2"):
        with pytest.raises(MatrixParseError):
            parse_complex_token(bad)


def test_format_complex_token():
    assert format_complex_token(1.5 + 0j) == "1.5"
    assert format_complex_token(1 + 2j) == "1.0+2.0i"
    assert format_complex_token(-0.5 - 0.25j) == "-0.5-0.25i"
    # formatter and parser are inverse on awkward floats
    z = (1 / 3) - (2 / 7) * 1j
    assert parse_complex_token(format_complex_token(z)) == z


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_round_trip_exact(tmp_path, fmt):
    rng = np.random.default_rng(13)
    A = rng.standard_normal((3, 4)) / 3 + 1j * rng.standard_normal((3, 4)) / 7
    path = tmp_path / f"m.{fmt}"
    write_matrix(path, A)
    got = read_matrix(path)
    assert got.format == fmt
    assert np.array_equal(got.matrix, A.astype(complex))  # bit-exact via repr


def test_json_shape_and_errors(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('{"rows": 2, "cols": 1, "entries": [[1.0, 0.0], [2.5, -1.0]]}')
    M = read_matrix(p).matrix
    assert M.shape == (2, 1) and M[1, 0] == 2.5 - 1j
    for text in (
        "{not json",
        "[1, 2]",
        '{"rows": 2, "cols": 2, "entries": [[1, 0]]}',
        '{"rows": 1, "cols": 1, "entries": [[1, 0, 0]]}',
        '{"rows": 1, "cols": 1, "entries": ["x"]}',
        '{"rows": 0, "cols": 1, "entries": []}',
        '{"rows": 1, "cols": 1, "entries": [[Infinity, 0]]}',
    ):
        p.write_text(text)
        with pytest.raises(MatrixParseError):
            read_matrix(p)


def test_csv_comments_blank_lines_and_errors(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("# comment\n1,2\n\n3,4i\n")
    M = read_matrix(p).matrix
    assert M.shape == (2, 2) and M[1, 1] == 4j
    p.write_text("1,2\n3\n")
    with pytest.raises(MatrixParseError):
        read_matrix(p)  # ragged
    p.write_text("# only comments\n")
    with pytest.raises(MatrixParseError):
        read_matrix(p)
    p.write_text("1,oops\n")
    with pytest.raises(MatrixParseError):
        read_matrix(p)


def test_format_sniffing(tmp_path):
    p = tmp_path / "matrix.txt"
    p.write_text('{"rows": 1, "cols": 1, "entries": [[7.0, 0.0]]}')
    assert read_matrix(p).format == "json"
    p.write_text("7,1\n0,2\n")
    assert read_matrix(p).format == "csv"


def test_write_matrix_format_override(tmp_path):
    p = tmp_path / "m.dat"
    write_matrix(p, [[1.0, 2.0]], fmt="json")
    assert read_matrix(p).format == "json"
    with pytest.raises(ValueError):
        write_matrix(p, [[1.0]], fmt="yaml")
