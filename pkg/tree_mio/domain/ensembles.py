import json

import numpy as np
from pydantic import BaseModel, ConfigDict


class SplitNode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: int
    feature: int
    threshold: float
    left: int
    right: int


class LeafNode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: int
    value: float


TreeNode = SplitNode | LeafNode


class DecisionTree(BaseModel):
    model_config = ConfigDict(frozen=True)

    nodes: dict[int, TreeNode]
    root: int

    def is_leaf(self, node_id: int) -> bool:
        return isinstance(self.nodes[node_id], LeafNode)

    def leaf_ids(self) -> list[int]:
        """Leaf node ids in left-to-right depth-first order."""

        leaves: list[int] = []
        stack = [self.root]
        while stack:
            node = self.nodes[stack.pop()]
            if isinstance(node, LeafNode):
                leaves.append(node.id)
            else:
                stack.append(node.right)
                stack.append(node.left)

        return leaves

    def split_ids(self) -> list[int]:
        """Split node ids in preorder."""

        splits: list[int] = []
        stack = [self.root]
        while stack:
            node = self.nodes[stack.pop()]
            if isinstance(node, SplitNode):
                splits.append(node.id)
                stack.append(node.right)
                stack.append(node.left)

        return splits

    @property
    def num_leaves(self) -> int:
        return sum(1 for node in self.nodes.values() if isinstance(node, LeafNode))

    def to_payload(self) -> dict:
        return {
            "root": self.root,
            "nodes": [self.nodes[node_id].model_dump() for node_id in sorted(self.nodes)],
        }


class TreeEnsemble(BaseModel):
    """A weighted sum of decision trees over a box domain."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    num_features: int
    domain: list[tuple[float, float]]
    trees: list[DecisionTree]
    weights: list[float]

    @property
    def num_trees(self) -> int:
        return len(self.trees)

    @property
    def lower(self) -> np.ndarray:
        return np.array([lb for lb, _ in self.domain], dtype=float)

    @property
    def upper(self) -> np.ndarray:
        return np.array([ub for _, ub in self.domain], dtype=float)

    @property
    def is_bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper)))

    def to_payload(self) -> dict:
        return {
            "num_features": self.num_features,
            "domain": [list(bounds) for bounds in self.domain],
            "weights": list(self.weights),
            "trees": [tree.to_payload() for tree in self.trees],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_payload(), indent=indent)


class LeafBox(BaseModel):
    """
    The region of feature space routed to one leaf.

    Coordinates satisfy b[i] < w[i] <= u[i] when lower_open[i] is set and b[i] <= w[i] <= u[i] otherwise.
    """

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    leaf_id: int
    b: list[float]
    u: list[float]
    score: float
    lower_open: list[bool]

    def contains(self, w: list[float] | np.ndarray) -> bool:
        for value, lb, ub, is_open in zip(w, self.b, self.u, self.lower_open, strict=True):
            if value > ub:
                return False
            if value < lb or (is_open and value == lb):
                return False

        return True
