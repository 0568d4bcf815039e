from tree_mio.domain.ensembles import SplitNode
from tree_mio.domain.exceptions import UnboundedDomain
from tree_mio.domain.models import MipModel, role_key
from tree_mio.domain.types import FormulationKind, Integrality, Sense

from .base import BaseFormulation


class BigMFormulation(BaseFormulation):
    """
    Arc-flow formulation: one binary per tree arc, flow conservation at split nodes and a big-M row per arc
    tying w to the split the arc leaves.

    The default M is ub - threshold for left arcs and threshold - lb for right arcs.
    """

    kind = FormulationKind.BIGM

    def __init__(self, ensemble, index=None, big_m: float | None = None):
        super().__init__(ensemble, index)
        self.big_m = big_m

    def _build_body(self, model: MipModel) -> list[tuple[list[tuple[int, float]], float]]:
        if not self.ensemble.is_bounded:
            raise UnboundedDomain("The bigm formulation needs finite domain bounds.")

        w = self._add_features(model)
        outputs = []
        for t, tree in enumerate(self.ensemble.trees):
            root = tree.nodes[tree.root]
            if not isinstance(root, SplitNode):
                outputs.append(([], root.value))
                continue

            incoming: dict[int, int] = {}
            leaf_terms: list[tuple[int, float]] = []
            for node_id in tree.split_ids():
                node = tree.nodes[node_id]
                lb, ub = self.ensemble.domain[node.feature]
                arcs = {}
                for side, child in (("L", node.left), ("R", node.right)):
                    arc = model.add_variable(
                        f"a_{t + 1}_{node_id}_{side}", 0.0, 1.0, Integrality.BINARY, role=role_key("arc", t, node_id, side)
                    )
                    arcs[side] = arc
                    incoming[child] = arc
                    if tree.is_leaf(child):
                        leaf_terms.append((arc, tree.nodes[child].value))

                left_m = self.big_m if self.big_m is not None else ub - node.threshold
                right_m = self.big_m if self.big_m is not None else node.threshold - lb
                w_i = w[node.feature]
                # w - M(1 - a_L) <= theta and w + M(1 - a_R) >= theta
                model.add_constraint(
                    f"m_{t + 1}_{node_id}_L", [(w_i, 1.0), (arcs["L"], left_m)], Sense.LE, node.threshold + left_m
                )
                model.add_constraint(
                    f"m_{t + 1}_{node_id}_R", [(w_i, 1.0), (arcs["R"], -right_m)], Sense.GE, node.threshold - right_m
                )

                flow = [(arcs["L"], 1.0), (arcs["R"], 1.0)]
                if node_id == tree.root:
                    model.add_constraint(f"flow_{t + 1}_{node_id}", flow, Sense.EQ, 1.0)
                else:
                    model.add_constraint(f"flow_{t + 1}_{node_id}", [*flow, (incoming[node_id], -1.0)], Sense.EQ, 0.0)

            outputs.append((leaf_terms, 0.0))

        return outputs
