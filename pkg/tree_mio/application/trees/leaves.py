from tree_mio.domain.ensembles import DecisionTree, LeafBox, LeafNode, TreeEnsemble


def extract_leaves(tree: DecisionTree, ensemble: TreeEnsemble) -> list[LeafBox]:
    """
    Extracts the box of every leaf, in left-to-right order.

    A left branch caps u at the split threshold, a right branch raises b to it and marks the side open.
    """

    boxes: list[LeafBox] = []

    def walk(node_id: int, b: list[float], u: list[float], lower_open: list[bool]) -> None:
        node = tree.nodes[node_id]
        if isinstance(node, LeafNode):
            boxes.append(LeafBox(leaf_id=node.id, b=b, u=u, score=node.value, lower_open=lower_open))
            return

        i, theta = node.feature, node.threshold
        left_u = list(u)
        left_u[i] = min(u[i], theta)
        walk(node.left, list(b), left_u, list(lower_open))

        right_b, right_open = list(b), list(lower_open)
        if theta >= b[i]:
            right_b[i] = theta
            right_open[i] = True
        walk(node.right, right_b, list(u), right_open)

    walk(
        tree.root,
        [lb for lb, _ in ensemble.domain],
        [ub for _, ub in ensemble.domain],
        [False] * ensemble.num_features,
    )

    return boxes


def ensemble_leaves(ensemble: TreeEnsemble) -> list[list[LeafBox]]:
    return [extract_leaves(tree, ensemble) for tree in ensemble.trees]
