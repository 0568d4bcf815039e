import numpy as np
import pytest

from pipelines.verify import one_feature_forest
from tree_mio.application.analysis.tu import (
    bareiss_det,
    check_tu,
    count_submatrices,
    expset_tu_matrix,
    find_bad_minor,
    ghouila_houri_coloring,
)
from tree_mio.application.fixtures.paper import paper_fixture
from tree_mio.domain.exceptions import DimensionError, EntryRange, SizeLimit


@pytest.mark.parametrize(
    ("matrix", "det"),
    [
        ([[2, 1], [1, 1]], 1),
        ([[0, 1], [1, 0]], -1),
        ([[1, 1, 0], [0, 1, 1], [1, 0, 1]], 2),
        ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 0),
        ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], -1),
    ],
)
def test_bareiss_det(matrix, det):
    assert bareiss_det(np.array(matrix)) == det


def test_small_tu_cases():
    assert check_tu(np.array([[1, -1], [0, 1]]), 2)
    assert not check_tu(np.array([[1, 1], [-1, 1]]), 2)


def test_odd_cycle_is_not_tu():
    witness = find_bad_minor(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]), 3)

    assert witness == ((0, 1, 2), (0, 1, 2), 2)


def test_interval_matrix_is_tu():
    consecutive_ones = np.array([[1, 1, 0, 0], [0, 1, 1, 1], [1, 1, 1, 0], [0, 0, 1, 1]])

    assert check_tu(consecutive_ones, 4)


def test_entry_range():
    with pytest.raises(EntryRange):
        find_bad_minor(np.array([[2, 0], [0, 1]]), 2)


def test_size_limit():
    assert count_submatrices(2, 3, 2) == 6 + 3

    with pytest.raises(SizeLimit):
        find_bad_minor(np.zeros((40, 40), dtype=int), 10)


def test_expset_matrix_layout():
    tu = expset_tu_matrix(paper_fixture("ex3").ensemble)

    assert tu.tree_columns == [[0, 1], [2, 3]]
    assert tu.x_columns == [4, 5]
    np.testing.assert_array_equal(
        tu.matrix,
        [
            [1, 0, 0, 0, -1, 0],
            [0, 0, 1, 0, 0, -1],
            [0, 0, 0, 0, -1, 1],
        ],
    )
    assert check_tu(tu.matrix, 3)


def test_expset_matrix_of_nested_forest():
    tu = expset_tu_matrix(paper_fixture("misic_gap").ensemble)

    assert tu.matrix.shape == (4 + 1, 3 + 2 + 2 + 2)
    assert check_tu(tu.matrix, min(tu.matrix.shape))
    signing, ok = ghouila_houri_coloring(tu)
    assert ok
    assert [signing[col] for col in tu.tree_columns[0]] == [1, -1, 1]


def test_coloring_of_a_column_subset():
    tu = expset_tu_matrix(paper_fixture("misic_gap").ensemble)

    signing, ok = ghouila_houri_coloring(tu, [0, 2, 5, 7])

    assert ok
    assert signing == {0: 1, 2: -1, 5: 1, 7: 1}


def test_expset_matrix_needs_one_feature(fig3a):
    with pytest.raises(DimensionError):
        expset_tu_matrix(fig3a.ensemble)


@pytest.mark.slow
@pytest.mark.parametrize("num_trees", [1, 2, 3, 4, 5])
def test_expset_matrices_of_random_one_feature_forests_are_tu(num_trees):
    tu = expset_tu_matrix(one_feature_forest(num_trees, depth=1, seed=num_trees, n_samples=12))

    assert check_tu(tu.matrix, min(9, *tu.matrix.shape))
    _, signed = ghouila_houri_coloring(tu)
    assert signed
