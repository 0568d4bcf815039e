from tree_mio.application.formulations.binary_split import MisicFormulation
from tree_mio.application.mip.core import relax
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.application.trees.split_index import SplitIndex, build_split_index
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import NotNested, SolverError
from tree_mio.domain.results import ImplicationReport
from tree_mio.domain.types import ObjectiveSense, Sense


def check_implication_lemma2(
    ensemble: TreeEnsemble,
    split: tuple[int, int],
    parent: tuple[int, int],
    index: SplitIndex | None = None,
    config: SolverConfig | None = None,
) -> ImplicationReport:
    """
    Checks whether the misic relaxation plus two expset rows already implies the elbow row of a nested pair.

    For parent in right_parent(split) the covering condition is below(parent) | above(split) = all leaves,
    the added rows bound below(parent) by x_parent and above(split) by 1 - x_split, and the elbow row is
    sum_{right(split)} z <= x_parent - x_split. The left_parent case mirrors it.

    Args:
        ensemble: The ensemble.
        split: (tree, node id) of s.
        parent: (tree, node id) of s', a same-feature ancestor of s.

    Raises:
        NotNested: If parent is not in right_parent(split) or left_parent(split).
    """

    config = config or SolverConfig.from_settings()
    index = index if index is not None else build_split_index(ensemble)
    s = index.split(*split)
    if parent[0] != split[0]:
        raise NotNested(f"Splits {split} and {parent} belong to different trees.")
    s_prime = index.split(*parent)

    model = MisicFormulation(ensemble, index).build()
    t = s.tree
    all_leaves = frozenset(range(index.num_leaves(t)))
    x_s = model.role("x", s.feature, s.rank)
    x_parent = model.role("x", s_prime.feature, s_prime.rank)

    def z_terms(leaves):
        return [(model.role("z", t, p), 1.0) for p in sorted(leaves)]

    if s_prime.node_id in s.right_parent:
        relation = "right_parent"
        covering = (s_prime.below | s.above) == all_leaves
        model.add_constraint("lemma_below", [*z_terms(s_prime.below), (x_parent, -1.0)], Sense.LE, 0.0)
        model.add_constraint("lemma_above", [*z_terms(s.above), (x_s, 1.0)], Sense.LE, 1.0)
        elbow = [*z_terms(s.right), (x_parent, -1.0), (x_s, 1.0)]
    elif s_prime.node_id in s.left_parent:
        relation = "left_parent"
        covering = (s_prime.above | s.below) == all_leaves
        model.add_constraint("lemma_below", [*z_terms(s.below), (x_s, -1.0)], Sense.LE, 0.0)
        model.add_constraint("lemma_above", [*z_terms(s_prime.above), (x_parent, 1.0)], Sense.LE, 1.0)
        elbow = [*z_terms(s.left), (x_s, -1.0), (x_parent, 1.0)]
    else:
        raise NotNested(f"Split {parent} is not a same-feature ancestor of {split}.")

    relaxed = relax(model)
    relaxed.set_objective(elbow, ObjectiveSense.MAXIMIZE)
    result = solve_lp(relaxed, config)
    if not result.is_optimal:
        raise SolverError(f"Elbow violation LP ended with status {result.status}.")
    violation = max(0.0, result.objective)

    return ImplicationReport(
        split=split,
        parent=parent,
        relation=relation,
        covering=covering,
        max_violation=violation,
        implied=violation <= config.feas_tol,
    )
