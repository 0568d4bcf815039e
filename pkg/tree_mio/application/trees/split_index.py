from itertools import groupby

from pydantic import BaseModel, ConfigDict

from tree_mio.domain.ensembles import SplitNode, TreeEnsemble
from tree_mio.domain.exceptions import StructureError


class SplitInfo(BaseModel):
    """
    Combinatorial view of one split node.

    Leaf sets hold 0-based positions in the tree's left-to-right leaf order. `rank` is the 0-based position
    of the threshold among the sorted distinct thresholds of the feature, pooled across trees.
    """

    model_config = ConfigDict(frozen=True)

    tree: int
    node_id: int
    feature: int
    threshold: float
    rank: int
    left: frozenset[int]
    right: frozenset[int]
    below: frozenset[int]
    above: frozenset[int]
    right_parent: frozenset[int]
    left_parent: frozenset[int]

    @property
    def key(self) -> tuple[int, int]:
        return (self.tree, self.node_id)


class SplitIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    thresholds: list[list[float]]
    splits: list[SplitInfo]
    leaf_ids: list[list[int]]

    def num_thresholds(self, feature: int) -> int:
        return len(self.thresholds[feature])

    def split(self, tree: int, node_id: int) -> SplitInfo:
        for info in self.splits:
            if info.tree == tree and info.node_id == node_id:
                return info

        raise StructureError(f"Tree {tree} has no split node {node_id}.")

    def tree_splits(self, tree: int) -> list[SplitInfo]:
        return [info for info in self.splits if info.tree == tree]

    def num_leaves(self, tree: int) -> int:
        return len(self.leaf_ids[tree])


def _subtree_leaves(tree, node_id: int, positions: dict[int, int]) -> frozenset[int]:
    found: set[int] = set()
    stack = [node_id]
    while stack:
        node = tree.nodes[stack.pop()]
        if isinstance(node, SplitNode):
            stack.extend((node.left, node.right))
        else:
            found.add(positions[node.id])

    return frozenset(found)


def recursive_below_above(
    nodes: list[SplitNode], side: dict[int, tuple[frozenset[int], frozenset[int]]]
) -> tuple[dict[int, frozenset[int]], dict[int, frozenset[int]]]:
    """below/above by accumulation over one tree's same-feature splits in threshold order."""

    ordered = sorted(nodes, key=lambda n: n.threshold)
    groups = [list(g) for _, g in groupby(ordered, key=lambda n: n.threshold)]
    below: dict[int, frozenset[int]] = {}
    above: dict[int, frozenset[int]] = {}
    running: frozenset[int] = frozenset()
    for group in groups:
        for node in group:
            running |= side[node.id][0]
        for node in group:
            below[node.id] = running
    running = frozenset()
    for group in reversed(groups):
        for node in group:
            running |= side[node.id][1]
        for node in group:
            above[node.id] = running

    return below, above


def union_below_above(
    nodes: list[SplitNode], side: dict[int, tuple[frozenset[int], frozenset[int]]]
) -> tuple[dict[int, frozenset[int]], dict[int, frozenset[int]]]:
    """below(s) as the union of left(s') over thresholds <= theta(s), above(s) of right(s') over >= theta(s)."""

    below = {
        node.id: frozenset().union(*(side[other.id][0] for other in nodes if other.threshold <= node.threshold))
        for node in nodes
    }
    above = {
        node.id: frozenset().union(*(side[other.id][1] for other in nodes if other.threshold >= node.threshold))
        for node in nodes
    }

    return below, above


def build_split_index(ensemble: TreeEnsemble) -> SplitIndex:
    """Computes left/right/below/above leaf sets, pooled threshold ranks and same-feature ancestry."""

    thresholds: list[set[float]] = [set() for _ in range(ensemble.num_features)]
    for tree in ensemble.trees:
        for node in tree.nodes.values():
            if isinstance(node, SplitNode):
                thresholds[node.feature].add(node.threshold)
    sorted_thresholds = [sorted(values) for values in thresholds]
    ranks = [{theta: j for j, theta in enumerate(values)} for values in sorted_thresholds]

    splits: list[SplitInfo] = []
    all_leaf_ids: list[list[int]] = []
    for t, tree in enumerate(ensemble.trees):
        leaf_ids = tree.leaf_ids()
        all_leaf_ids.append(leaf_ids)
        positions = {leaf_id: p for p, leaf_id in enumerate(leaf_ids)}

        side: dict[int, tuple[frozenset[int], frozenset[int]]] = {}
        right_parent: dict[int, set[int]] = {}
        left_parent: dict[int, set[int]] = {}

        def walk(node_id: int, ancestors: list[tuple[int, str]]) -> None:
            node = tree.nodes[node_id]
            if not isinstance(node, SplitNode):
                return
            side[node_id] = (
                _subtree_leaves(tree, node.left, positions),
                _subtree_leaves(tree, node.right, positions),
            )
            right_parent[node_id] = set()
            left_parent[node_id] = set()
            for ancestor_id, branch in ancestors:
                if tree.nodes[ancestor_id].feature != node.feature:
                    continue
                if branch == "left":
                    right_parent[node_id].add(ancestor_id)
                else:
                    left_parent[node_id].add(ancestor_id)
            walk(node.left, [*ancestors, (node_id, "left")])
            walk(node.right, [*ancestors, (node_id, "right")])

        walk(tree.root, [])

        by_feature: dict[int, list[SplitNode]] = {}
        for node_id in tree.split_ids():
            node = tree.nodes[node_id]
            by_feature.setdefault(node.feature, []).append(node)

        below: dict[int, frozenset[int]] = {}
        above: dict[int, frozenset[int]] = {}
        for feature, nodes in by_feature.items():
            recursive = recursive_below_above(nodes, side)
            if recursive != union_below_above(nodes, side):
                raise StructureError(f"Tree {t}: below/above sets of feature {feature} disagree between definitions.")
            below.update(recursive[0])
            above.update(recursive[1])

        for node_id in tree.split_ids():
            node = tree.nodes[node_id]
            left, right = side[node_id]
            splits.append(
                SplitInfo(
                    tree=t,
                    node_id=node_id,
                    feature=node.feature,
                    threshold=node.threshold,
                    rank=ranks[node.feature][node.threshold],
                    left=left,
                    right=right,
                    below=below[node_id],
                    above=above[node_id],
                    right_parent=frozenset(right_parent[node_id]),
                    left_parent=frozenset(left_parent[node_id]),
                )
            )

    return SplitIndex(thresholds=sorted_thresholds, splits=splits, leaf_ids=all_leaf_ids)
