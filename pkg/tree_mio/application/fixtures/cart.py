import numpy as np
from loguru import logger

from tree_mio.application.trees.parsing import build_ensemble
from tree_mio.domain.datasets import Dataset
from tree_mio.domain.ensembles import DecisionTree, LeafNode, SplitNode, TreeEnsemble

from .synthetic import make_rng

GAIN_TOL = 1e-12


def _best_split(X: np.ndarray, r: np.ndarray, min_leaf: int) -> tuple[int, float, np.ndarray] | None:
    """Largest squared-error reduction over midpoints, lowest feature then lowest threshold on ties."""

    n = len(r)
    total = r.sum()
    best: tuple[int, float, np.ndarray] | None = None
    best_gain = GAIN_TOL
    for i in range(X.shape[1]):
        order = np.argsort(X[:, i], kind="stable")
        values, sorted_r = X[order, i], r[order]
        prefix = np.cumsum(sorted_r)
        for k in range(min_leaf, n - min_leaf + 1):
            if values[k - 1] == values[k]:
                continue
            left_sum, right_sum = prefix[k - 1], total - prefix[k - 1]
            # SSE reduction = left_sum^2/nl + right_sum^2/nr - total^2/n
            gain = left_sum**2 / k + right_sum**2 / (n - k) - total**2 / n
            if gain > best_gain:
                threshold = float((values[k - 1] + values[k]) / 2.0)
                best_gain = gain
                best = (i, threshold, X[:, i] <= threshold)

    return best


def train_cart(data: Dataset, max_depth: int, min_leaf: int = 1) -> DecisionTree:
    """
    Grows a regression tree greedily on squared error. Leaves predict the mean reward of their samples.
    """

    nodes: dict[int, SplitNode | LeafNode] = {}
    next_id = iter(range(2**31))

    def grow(X: np.ndarray, r: np.ndarray, depth: int) -> int:
        node_id = next(next_id)
        split = None
        if depth < max_depth and len(r) >= 2 * min_leaf and np.ptp(r) > 0:
            split = _best_split(X, r, min_leaf)
        if split is None:
            nodes[node_id] = LeafNode(id=node_id, value=float(r.mean()))
            return node_id

        feature, threshold, goes_left = split
        left = grow(X[goes_left], r[goes_left], depth + 1)
        right = grow(X[~goes_left], r[~goes_left], depth + 1)
        nodes[node_id] = SplitNode(id=node_id, feature=feature, threshold=threshold, left=left, right=right)

        return node_id

    if max_depth > 0 and np.ptp(data.r) == 0:
        logger.warning(f"All {data.num_samples} rewards are identical; the tree is a single leaf.")

    root = grow(data.X, data.r, 0)

    return DecisionTree(nodes=nodes, root=root)


def train_forest(
    data: Dataset,
    num_trees: int,
    max_depth: int,
    seed: int = 0,
    min_leaf: int = 1,
    domain: list[tuple[float, float]] | None = None,
) -> TreeEnsemble:
    """
    Trains num_trees CART trees on bootstrap resamples drawn from PCG64(seed) and weights them 1/T.

    The domain defaults to [-1, 1] on every feature, the support of the triangle data.
    """

    rng = make_rng(seed)
    domain = domain or [(-1.0, 1.0)] * data.num_features
    trees = []
    for _ in range(num_trees):
        sample = rng.integers(0, data.num_samples, size=data.num_samples)
        resampled = Dataset(X=data.X[sample], r=data.r[sample], seed=data.seed)
        trees.append(train_cart(resampled, max_depth, min_leaf))

    logger.info(f"Trained {num_trees} trees of depth <= {max_depth} on {data.num_samples} samples.")

    return build_ensemble(
        {
            "num_features": data.num_features,
            "domain": [list(bounds) for bounds in domain],
            "weights": [1.0 / num_trees] * num_trees,
            "trees": [tree.to_payload() for tree in trees],
        }
    )
