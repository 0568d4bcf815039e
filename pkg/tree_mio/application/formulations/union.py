"""Formulations over the feature vector w built from the leaf boxes of each tree."""

import math

from tree_mio.application.trees.leaves import extract_leaves
from tree_mio.domain.ensembles import LeafBox
from tree_mio.domain.exceptions import UnboundedDomain
from tree_mio.domain.models import MipModel, role_key
from tree_mio.domain.types import FormulationKind, Integrality, Sense

from .base import BaseFormulation


class LeafBoxFormulation(BaseFormulation):
    def _boxes(self) -> list[list[LeafBox]]:
        if not self.ensemble.is_bounded:
            raise UnboundedDomain(f"The {self.kind.value} formulation needs finite domain bounds.")

        return [extract_leaves(tree, self.ensemble) for tree in self.ensemble.trees]


class UnionExtFormulation(LeafBoxFormulation):
    """Extended formulation of the union of leaf boxes, with one copy of w per leaf."""

    kind = FormulationKind.UNION_EXT

    def _build_body(self, model: MipModel) -> list[tuple[list[tuple[int, float]], float]]:
        boxes = self._boxes()
        w = self._add_features(model)
        self._add_leaf_selectors(model, Integrality.BINARY, 1.0)

        outputs = []
        for t, tree_boxes in enumerate(boxes):
            copies: list[list[int]] = [[] for _ in w]
            leaf_outputs = []
            for p, box in enumerate(tree_boxes):
                z = model.role("z", t, p)
                for i in range(len(w)):
                    w_copy = model.add_variable(
                        f"w_{t + 1}_{p + 1}_{i + 1}", -math.inf, math.inf, role=role_key("wl", t, p, i)
                    )
                    copies[i].append(w_copy)
                    model.add_constraint(f"ub_{t + 1}_{p + 1}_{i + 1}", [(z, box.u[i]), (w_copy, -1.0)], Sense.GE, 0.0)
                    model.add_constraint(f"lb_{t + 1}_{p + 1}_{i + 1}", [(z, box.b[i]), (w_copy, -1.0)], Sense.LE, 0.0)
                y_leaf = model.add_variable(f"yl_{t + 1}_{p + 1}", -math.inf, math.inf, role=role_key("yl", t, p))
                model.add_constraint(f"score_{t + 1}_{p + 1}", [(y_leaf, 1.0), (z, -box.score)], Sense.EQ, 0.0)
                leaf_outputs.append((y_leaf, 1.0))

            model.add_constraint(
                f"pick_{t + 1}", [(model.role("z", t, p), 1.0) for p in range(len(tree_boxes))], Sense.EQ, 1.0
            )
            for i, w_i in enumerate(w):
                model.add_constraint(
                    f"sum_{t + 1}_{i + 1}", [(w_i, 1.0), *((c, -1.0) for c in copies[i])], Sense.EQ, 0.0
                )
            outputs.append((leaf_outputs, 0.0))

        return outputs


class ProjectedFormulation(LeafBoxFormulation):
    """Projection of the extended formulation onto (w, z, y): one pair of box rows per tree and feature."""

    kind = FormulationKind.PROJECTED

    def _build_body(self, model: MipModel) -> list[tuple[list[tuple[int, float]], float]]:
        boxes = self._boxes()
        w = self._add_features(model)
        self._add_leaf_selectors(model, Integrality.BINARY, 1.0)

        outputs = []
        for t, tree_boxes in enumerate(boxes):
            z = [model.role("z", t, p) for p in range(len(tree_boxes))]
            for i, w_i in enumerate(w):
                model.add_constraint(
                    f"ub_{t + 1}_{i + 1}",
                    [*((z_p, box.u[i]) for z_p, box in zip(z, tree_boxes)), (w_i, -1.0)],
                    Sense.GE,
                    0.0,
                )
                model.add_constraint(
                    f"lb_{t + 1}_{i + 1}",
                    [*((z_p, box.b[i]) for z_p, box in zip(z, tree_boxes)), (w_i, -1.0)],
                    Sense.LE,
                    0.0,
                )
            model.add_constraint(f"pick_{t + 1}", [(z_p, 1.0) for z_p in z], Sense.EQ, 1.0)
            outputs.append(([(z_p, box.score) for z_p, box in zip(z, tree_boxes)], 0.0))

        return outputs


class FacetFormulation(LeafBoxFormulation):
    """
    The projected formulation with the last leaf of every tree eliminated through z_p = 1 - sum(z_l).

    The selector of the eliminated leaf stays nonnegative, so sum(z_l) <= 1 is kept.
    """

    kind = FormulationKind.FACET

    def _build_body(self, model: MipModel) -> list[tuple[list[tuple[int, float]], float]]:
        boxes = self._boxes()
        w = self._add_features(model)
        for t, tree_boxes in enumerate(boxes):
            for p in range(len(tree_boxes) - 1):
                model.add_variable(f"z_{t + 1}_{p + 1}", 0.0, 1.0, Integrality.BINARY, role=role_key("z", t, p))

        outputs = []
        for t, tree_boxes in enumerate(boxes):
            *kept, last = tree_boxes
            z = [model.role("z", t, p) for p in range(len(kept))]
            for i, w_i in enumerate(w):
                model.add_constraint(
                    f"ub_{t + 1}_{i + 1}",
                    [*((z_p, box.u[i] - last.u[i]) for z_p, box in zip(z, kept)), (w_i, -1.0)],
                    Sense.GE,
                    -last.u[i],
                )
                model.add_constraint(
                    f"lb_{t + 1}_{i + 1}",
                    [*((z_p, box.b[i] - last.b[i]) for z_p, box in zip(z, kept)), (w_i, -1.0)],
                    Sense.LE,
                    -last.b[i],
                )
            if z:
                model.add_constraint(f"pick_{t + 1}", [(z_p, 1.0) for z_p in z], Sense.LE, 1.0)
            outputs.append(([(z_p, box.score - last.score) for z_p, box in zip(z, kept)], last.score))

        return outputs
