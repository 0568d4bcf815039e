"""Total unimodularity checks by exhaustive exact minors, plus the expset matrix of a 1-D ensemble."""

import itertools
import math

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from tree_mio.application.trees.split_index import build_split_index
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import DimensionError, EntryRange, SizeLimit

MAX_SUBMATRICES = 10_000_000


def bareiss_det(M: np.ndarray) -> int:
    """Exact determinant of a square integer matrix by fraction-free elimination."""

    A = [[int(v) for v in row] for row in M]
    n = len(A)
    if n == 0:
        return 1

    sign, previous = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division by the previous pivot
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]) // previous
            A[i][k] = 0
        previous = pivot

    return sign * A[n - 1][n - 1]


def count_submatrices(m: int, n: int, max_order: int) -> int:
    return sum(math.comb(m, k) * math.comb(n, k) for k in range(1, min(max_order, m, n) + 1))


def find_bad_minor(matrix: np.ndarray, max_order: int) -> tuple[tuple[int, ...], tuple[int, ...], int] | None:
    """
    Searches every square submatrix up to max_order for a determinant outside {-1, 0, 1}.

    Submatrices with a row or column holding at most one nonzero are skipped: their determinant is zero
    or plus/minus a smaller minor that was already checked.

    Raises:
        EntryRange: If an entry lies outside {-1, 0, 1}.
        SizeLimit: If more than ten million submatrices would be enumerated.
    """

    A = np.asarray(matrix)
    if A.ndim != 2:
        raise EntryRange("Expected a two-dimensional matrix.")
    if not np.isin(A, [-1, 0, 1]).all():
        raise EntryRange("Matrix entries must lie in {-1, 0, 1}.")

    m, n = A.shape
    total = count_submatrices(m, n, max_order)
    if total > MAX_SUBMATRICES:
        raise SizeLimit(f"{total} submatrices up to order {max_order} exceed the limit of {MAX_SUBMATRICES}.")

    nonzero = A != 0
    for k in range(2, min(max_order, m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            row_block = nonzero[list(rows)]
            # columns touched at least twice within these rows
            usable = [j for j in range(n) if row_block[:, j].sum() >= 2]
            if len(usable) < k:
                continue
            for cols in itertools.combinations(usable, k):
                block = row_block[:, cols]
                if (block.sum(axis=1) < 2).any():
                    continue
                det = bareiss_det(A[np.ix_(rows, cols)])
                if abs(det) > 1:
                    return rows, cols, det

    return None


def check_tu(matrix: np.ndarray, max_order: int) -> bool:
    witness = find_bad_minor(matrix, max_order)
    if witness is not None:
        rows, cols, det = witness
        logger.info(f"Minor on rows {rows} and columns {cols} has determinant {det}.")

    return witness is None


class TuMatrix(BaseModel):
    """Expset rows of a 1-D ensemble: one below-row per split, then the x ordering rows."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray
    tree_columns: list[list[int]]
    x_columns: list[int]


def expset_tu_matrix(ensemble: TreeEnsemble) -> TuMatrix:
    """
    Rows are, per tree and in threshold order, sum_{below(s)} z - x_s, followed by -x_j + x_{j+1}.
    Columns are the z of each tree in leaf order, then x in threshold order.

    Raises:
        DimensionError: If the ensemble has more than one feature.
    """

    if ensemble.num_features != 1:
        raise DimensionError("The expset matrix is defined for one-feature ensembles.")

    index = build_split_index(ensemble)
    tree_columns: list[list[int]] = []
    offset = 0
    for t in range(ensemble.num_trees):
        tree_columns.append(list(range(offset, offset + index.num_leaves(t))))
        offset += index.num_leaves(t)
    num_thresholds = index.num_thresholds(0)
    x_columns = list(range(offset, offset + num_thresholds))

    rows = []
    for t in range(ensemble.num_trees):
        for info in sorted(index.tree_splits(t), key=lambda s: s.threshold):
            row = np.zeros(offset + num_thresholds, dtype=int)
            for p in info.below:
                row[tree_columns[t][p]] = 1
            row[x_columns[info.rank]] = -1
            rows.append(row)
    for j in range(num_thresholds - 1):
        row = np.zeros(offset + num_thresholds, dtype=int)
        row[x_columns[j]] = -1
        row[x_columns[j + 1]] = 1
        rows.append(row)

    matrix = np.vstack(rows) if rows else np.zeros((0, offset), dtype=int)

    return TuMatrix(matrix=matrix, tree_columns=tree_columns, x_columns=x_columns)


def ghouila_houri_coloring(tu: TuMatrix, columns: list[int] | None = None) -> tuple[dict[int, int], bool]:
    """
    Signs a subset of columns so that every row sum lies in {-1, 0, 1}.

    Within each tree the selected z columns alternate +1, -1, ... in leaf order; x columns get +1.

    Returns:
        tuple: The signing by column and whether every signed row sum lies in {-1, 0, 1}.
    """

    selected = set(range(tu.matrix.shape[1])) if columns is None else set(columns)
    signing: dict[int, int] = {}
    for block in tu.tree_columns:
        sign = 1
        for col in block:
            if col in selected:
                signing[col] = sign
                sign = -sign
    for col in tu.x_columns:
        if col in selected:
            signing[col] = 1

    sigma = np.zeros(tu.matrix.shape[1], dtype=int)
    for col, sign in signing.items():
        sigma[col] = sign
    sums = tu.matrix @ sigma

    return signing, bool(np.all(np.abs(sums) <= 1))
