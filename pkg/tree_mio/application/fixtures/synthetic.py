import numpy as np

from tree_mio.domain.datasets import Dataset


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def triangle_reward(X: np.ndarray, eps: np.ndarray | None = None) -> np.ndarray:
    """r = sum_i (1 - |w_i|) + d * eps, a pyramid peaking at the origin."""

    X = np.atleast_2d(X)
    reward = np.sum(1.0 - np.abs(X), axis=1)
    if eps is not None:
        reward = reward + X.shape[1] * eps

    return reward


def gen_triangle_data(d: int, n: int, noise: bool = True, seed: int = 0) -> Dataset:
    """
    Samples w uniformly from [-1, 1]^d and scores it with the triangle reward.

    With noise, eps is drawn uniformly from [0, 1] per sample; both draws come from one PCG64 stream.
    """

    if d < 1 or n < 1:
        raise ValueError(f"Need d >= 1 and n >= 1, got d={d}, n={n}.")

    rng = make_rng(seed)
    X = rng.uniform(-1.0, 1.0, size=(n, d))
    eps = rng.uniform(0.0, 1.0, size=n) if noise else None

    return Dataset(X=X, r=triangle_reward(X, eps), seed=seed)
