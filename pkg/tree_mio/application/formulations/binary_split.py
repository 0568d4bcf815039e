"""Formulations over binary split variables x and continuous leaf selectors z."""

import math

from tree_mio.application.trees.split_index import SplitIndex, build_split_index
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import MismatchError
from tree_mio.domain.models import MipModel
from tree_mio.domain.types import FormulationKind, Integrality, Sense

from .base import BaseFormulation


class MisicFormulation(BaseFormulation):
    """One row per side of every split: the leaves of that side need the split's x set accordingly."""

    kind = FormulationKind.MISIC

    def _side_sets(self, info):
        return info.left, info.right

    def _build_body(self, model: MipModel) -> list[tuple[list[tuple[int, float]], float]]:
        self._add_split_binaries(model)
        self._add_leaf_selectors(model, Integrality.CONTINUOUS, math.inf)

        outputs = []
        for t in range(self.ensemble.num_trees):
            for info in self.index.tree_splits(t):
                x = model.role("x", info.feature, info.rank)
                lower_side, upper_side = self._side_sets(info)
                model.add_constraint(
                    f"left_{t + 1}_{info.node_id}",
                    [*self._z(model, t, lower_side), (x, -1.0)],
                    Sense.LE,
                    0.0,
                )
                model.add_constraint(
                    f"right_{t + 1}_{info.node_id}",
                    [*self._z(model, t, upper_side), (x, 1.0)],
                    Sense.LE,
                    1.0,
                )

            leaves = range(self.index.num_leaves(t))
            model.add_constraint(f"pick_{t + 1}", self._z(model, t, leaves), Sense.EQ, 1.0)
            outputs.append((self._scores(model, t), 0.0))

        return outputs

    def _scores(self, model: MipModel, t: int) -> list[tuple[int, float]]:
        tree = self.ensemble.trees[t]

        return [
            (model.role("z", t, p), tree.nodes[leaf_id].value) for p, leaf_id in enumerate(self.index.leaf_ids[t])
        ]


class ExpsetFormulation(MisicFormulation):
    """Replaces left/right by the accumulated below/above sets of same-feature splits in a tree."""

    kind = FormulationKind.EXPSET

    def _side_sets(self, info):
        return info.below, info.above


def add_elbow(base: MipModel, ensemble: TreeEnsemble, index: SplitIndex | None = None) -> MipModel:
    """
    Strengthens a misic or expset model with one elbow row per nested same-feature split pair.

    For s' in right_parent(s) the leaves right of s need x[s'] - x[s]; for s' in left_parent(s) the leaves
    left of s need x[s] - x[s'].

    Raises:
        MismatchError: If the base model is not a misic or expset model.
    """

    if base.kind not in (FormulationKind.MISIC, FormulationKind.EXPSET):
        raise MismatchError(f"Elbow rows extend misic or expset models, got '{base.kind}'.")

    index = index if index is not None else build_split_index(ensemble)
    model = base.model_copy(deep=True)
    model.kind = FormulationKind.ELBOW if base.kind == FormulationKind.MISIC else FormulationKind.EXPSET_ELBOW
    model.name = model.kind.value

    for info in index.splits:
        t = info.tree
        x_s = model.role("x", info.feature, info.rank)
        for parent_id in sorted(info.right_parent):
            parent = index.split(t, parent_id)
            x_parent = model.role("x", parent.feature, parent.rank)
            model.add_constraint(
                f"elbow_{t + 1}_{info.node_id}_{parent_id}",
                [*((model.role("z", t, p), 1.0) for p in sorted(info.right)), (x_parent, -1.0), (x_s, 1.0)],
                Sense.LE,
                0.0,
            )
        for parent_id in sorted(info.left_parent):
            parent = index.split(t, parent_id)
            x_parent = model.role("x", parent.feature, parent.rank)
            model.add_constraint(
                f"elbow_{t + 1}_{info.node_id}_{parent_id}",
                [*((model.role("z", t, p), 1.0) for p in sorted(info.left)), (x_s, -1.0), (x_parent, 1.0)],
                Sense.LE,
                0.0,
            )

    return model
