"""Tests for sparse tensors, factor matrices and .tns parsing."""

import numpy as np
import pytest

from psram.core.errors import DimensionError, TensorParseError
from psram.workloads import (
    FactorMatrix,
    SparseTensor,
    load_tns,
    parse_tns,
    random_factor,
    random_sparse_tensor,
)


class TestParseTns:
    def test_single_nonzero(self):
        x = parse_tns("1 1 1 2.0")
        assert x.dims == (1, 1, 1)
        assert x.nnz == 1
        np.testing.assert_array_equal(x.coords, [[0, 0, 0]])
        assert x.values[0] == 2.0

    def test_duplicates_are_summed(self):
        x = parse_tns("1 1 1 1.0\n1 1 1 1.0\n")
        assert x.nnz == 1
        assert x.values[0] == 2.0

    def test_dims_inferred_from_coordinates(self):
        x = parse_tns("1 2 3 4.5\n2 1 1 -1.0")
        assert x.nnz == 2
        assert x.dims == (2, 2, 3)

    def test_entries_are_sorted(self):
        x = parse_tns("2 1 1 1.0\n1 2 1 2.0\n1 1 2 3.0")
        np.testing.assert_array_equal(x.coords, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        np.testing.assert_array_equal(x.values, [3.0, 2.0, 1.0])

    def test_comments_blank_lines_and_header(self):
        text = "# generated\n# dims: 4 5 6\n\n1 1 1 1.5\n"
        x = parse_tns(text)
        assert x.dims == (4, 5, 6)
        assert x.nnz == 1

    def test_empty_text(self):
        x = parse_tns("# nothing here\n")
        assert x.nnz == 0
        assert x.dims == (1, 1, 1)

    @pytest.mark.parametrize(
        "text,line",
        [
            ("1 1 1 1.0\n1 1 2.0", 2),
            ("1 1 x 1.0", 1),
            ("1 1 1 abc", 1),
            ("\n0 1 1 1.0", 2),
            ("# dims: 2 2 2\n3 1 1 1.0", 2),
            ("# dims: 2 2", 1),
        ],
    )
    def test_errors_carry_line_number(self, text, line):
        with pytest.raises(TensorParseError) as exc:
            parse_tns(text)
        assert exc.value.line == line
        assert str(exc.value).startswith(f"line {line}:")


def test_load_tns(tmp_path):
    path = tmp_path / "x.tns"
    path.write_text("1 2 1 3.0\n")
    assert load_tns(path).dims == (1, 2, 1)
    with pytest.raises(FileNotFoundError):
        load_tns(tmp_path / "missing.tns")


def test_from_entries_rejects_out_of_range():
    with pytest.raises(DimensionError):
        SparseTensor.from_entries((2, 2, 2), [[0, 2, 0]], [1.0])
    with pytest.raises(DimensionError):
        SparseTensor.from_entries((2, 2, 2), [[0, 0, 0]], [1.0, 2.0])


def test_to_dense_and_scaled():
    x = SparseTensor.from_entries((2, 1, 2), [[1, 0, 1], [0, 0, 0]], [4.0, -1.0])
    dense = x.to_dense()
    assert dense[1, 0, 1] == 4.0
    assert dense[0, 0, 0] == -1.0
    assert dense.sum() == 3.0
    np.testing.assert_array_equal(x.scaled(0.5).values, x.values * 0.5)


def test_random_tensor_is_seeded():
    first = random_sparse_tensor((8, 8, 8), 0.05, seed=11)
    second = random_sparse_tensor((8, 8, 8), 0.05, seed=11)
    assert first.nnz == round(0.05 * 512)
    np.testing.assert_array_equal(first.coords, second.coords)
    np.testing.assert_array_equal(first.values, second.values)


def test_factor_matrix_validation():
    assert random_factor(5, 3, seed=0).rank == 3
    with pytest.raises(DimensionError):
        FactorMatrix(np.zeros((4, 0)))
    with pytest.raises(ValueError):
        FactorMatrix(np.array([[1.0, np.nan]]))
