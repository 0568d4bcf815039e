"""
Base class for formulation builders.

Every builder receives an ensemble (and its split index) and produces a MipModel whose variables carry
semantic roles, so analysis code can address w, x, z and y without knowing the builder.
"""

import math
from abc import ABC, abstractmethod
from typing import ClassVar

from tree_mio.application.trees.split_index import SplitIndex, build_split_index
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.models import MipModel, role_key
from tree_mio.domain.types import FormulationKind, Integrality, ObjectiveSense, Sense


class BaseFormulation(ABC):
    """
    Shared scaffolding for all builders.

    Subclasses implement `_build_body`, which adds the formulation's own variables and rows and returns,
    per tree, the linear expression of that tree's prediction as (terms, constant).
    """

    kind: ClassVar[FormulationKind]

    def __init__(self, ensemble: TreeEnsemble, index: SplitIndex | None = None):
        self.ensemble = ensemble
        self.index = index if index is not None else build_split_index(ensemble)

    def build(self) -> MipModel:
        model = MipModel(name=self.kind.value, kind=self.kind)
        outputs = self._build_body(model)
        self._add_outputs(model, outputs)

        return model

    @abstractmethod
    def _build_body(self, model: MipModel) -> list[tuple[list[tuple[int, float]], float]]:
        pass

    def _add_outputs(self, model: MipModel, outputs: list[tuple[list[tuple[int, float]], float]]) -> None:
        y = model.add_variable("y", -math.inf, math.inf, role=role_key("y"))
        weights = self.ensemble.weights

        if len(outputs) == 1:
            terms, constant = outputs[0]
            weight = weights[0]
            model.add_constraint(
                "def_y",
                [(y, 1.0), *((var_id, -weight * coeff) for var_id, coeff in terms)],
                Sense.EQ,
                weight * constant,
                definition=True,
            )
        else:
            tree_outputs = []
            for t, (terms, constant) in enumerate(outputs):
                y_t = model.add_variable(f"y_{t + 1}", -math.inf, math.inf, role=role_key("y_t", t))
                model.add_constraint(
                    f"def_y_{t + 1}",
                    [(y_t, 1.0), *((var_id, -coeff) for var_id, coeff in terms)],
                    Sense.EQ,
                    constant,
                    definition=True,
                )
                tree_outputs.append(y_t)
            model.add_constraint(
                "def_y",
                [(y, 1.0), *((y_t, -weight) for y_t, weight in zip(tree_outputs, weights))],
                Sense.EQ,
                0.0,
                definition=True,
            )

        model.set_objective([(y, 1.0)], ObjectiveSense.MAXIMIZE)

    def _add_features(self, model: MipModel) -> list[int]:
        return [
            model.add_variable(f"w{i + 1}", lb, ub, role=role_key("w", i))
            for i, (lb, ub) in enumerate(self.ensemble.domain)
        ]

    def _add_split_binaries(self, model: MipModel) -> None:
        """Adds x[i, j] (w_i <= j-th smallest threshold) with the ordering x[i, j] <= x[i, j + 1]."""

        for i, thresholds in enumerate(self.index.thresholds):
            for j in range(len(thresholds)):
                model.add_variable(
                    f"x_{i + 1}_{j + 1}", 0.0, 1.0, Integrality.BINARY, role=role_key("x", i, j)
                )
            for j in range(len(thresholds) - 1):
                model.add_constraint(
                    f"order_{i + 1}_{j + 1}",
                    [(model.role("x", i, j), 1.0), (model.role("x", i, j + 1), -1.0)],
                    Sense.LE,
                    0.0,
                )

    def _add_leaf_selectors(self, model: MipModel, integrality: Integrality, upper: float) -> None:
        for t in range(self.ensemble.num_trees):
            for p in range(self.index.num_leaves(t)):
                model.add_variable(f"z_{t + 1}_{p + 1}", 0.0, upper, integrality, role=role_key("z", t, p))

    def _z(self, model: MipModel, t: int, leaves) -> list[tuple[int, float]]:
        return [(model.role("z", t, p), 1.0) for p in sorted(leaves)]
