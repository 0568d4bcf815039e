import json
import math
from typing import Any

import numpy as np
from loguru import logger

from tree_mio.domain.ensembles import DecisionTree, LeafNode, SplitNode, TreeEnsemble
from tree_mio.domain.exceptions import DomainError, OutOfDomain, SchemaError, StructureError
from tree_mio.domain.results import Diagnostic, ValidationReport

ERROR_TYPES = {
    "SchemaError": SchemaError,
    "DomainError": DomainError,
    "StructureError": StructureError,
}


def _is_number(value: Any) -> bool:
    return isinstance(value, int | float) and not isinstance(value, bool)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _validate_domain(payload: dict, diagnostics: list[Diagnostic]) -> int | None:
    num_features = payload.get("num_features")
    if not _is_int(num_features) or num_features < 1:
        diagnostics.append(Diagnostic(code="SchemaError", message="num_features must be a positive integer."))
        return None

    domain = payload.get("domain")
    if not isinstance(domain, list) or len(domain) != num_features:
        diagnostics.append(
            Diagnostic(code="SchemaError", message=f"domain must list {num_features} [lb, ub] pairs.")
        )
        return None

    for i, bounds in enumerate(domain):
        if not isinstance(bounds, list | tuple) or len(bounds) != 2 or not all(_is_number(b) for b in bounds):
            diagnostics.append(Diagnostic(code="SchemaError", message=f"domain[{i}] must be a [lb, ub] pair."))
            return None
        lb, ub = bounds
        if math.isnan(lb) or math.isnan(ub) or lb >= ub:
            diagnostics.append(Diagnostic(code="DomainError", message=f"domain[{i}] has lb={lb} >= ub={ub}."))

    return num_features


def _validate_tree(t: int, tree: Any, payload: dict, num_features: int, diagnostics: list[Diagnostic]) -> None:
    if not isinstance(tree, dict) or not isinstance(tree.get("nodes"), list) or not _is_int(tree.get("root")):
        diagnostics.append(Diagnostic(code="SchemaError", message="tree needs a 'nodes' list and a 'root' id.", tree=t))
        return

    nodes: dict[int, dict] = {}
    for raw in tree["nodes"]:
        if not isinstance(raw, dict) or not _is_int(raw.get("id")):
            diagnostics.append(Diagnostic(code="SchemaError", message="every node needs an integer 'id'.", tree=t))
            continue
        node_id = raw["id"]
        if node_id in nodes:
            diagnostics.append(Diagnostic(code="StructureError", message="duplicate node id.", tree=t, node=node_id))
            continue
        nodes[node_id] = raw

        if "feature" in raw:
            _validate_split(t, raw, payload, num_features, diagnostics)
        elif "value" in raw:
            if not _is_number(raw["value"]) or not math.isfinite(raw["value"]):
                diagnostics.append(
                    Diagnostic(code="StructureError", message="leaf score must be finite.", tree=t, node=node_id)
                )
        else:
            diagnostics.append(
                Diagnostic(code="StructureError", message="leaf is missing its score.", tree=t, node=node_id)
            )

    root = tree["root"]
    if root not in nodes:
        diagnostics.append(Diagnostic(code="StructureError", message=f"root {root} is not a node.", tree=t))
        return

    reached: set[int] = set()
    stack = [root]
    while stack:
        node_id = stack.pop()
        if node_id in reached:
            diagnostics.append(
                Diagnostic(code="StructureError", message="node reached twice (cycle).", tree=t, node=node_id)
            )
            continue
        reached.add(node_id)
        raw = nodes[node_id]
        if "feature" not in raw:
            continue
        for side in ("left", "right"):
            child = raw.get(side)
            if not _is_int(child) or child not in nodes:
                diagnostics.append(
                    Diagnostic(code="StructureError", message=f"{side} child {child} is missing.", tree=t, node=node_id)
                )
                continue
            stack.append(child)

    for node_id in sorted(set(nodes) - reached):
        diagnostics.append(
            Diagnostic(code="StructureError", message="node is unreachable from the root.", tree=t, node=node_id)
        )


def _validate_split(t: int, raw: dict, payload: dict, num_features: int, diagnostics: list[Diagnostic]) -> None:
    node_id = raw["id"]
    feature, threshold = raw.get("feature"), raw.get("threshold")
    if not _is_int(feature) or not 0 <= feature < num_features:
        diagnostics.append(
            Diagnostic(code="SchemaError", message=f"split feature {feature} is out of range.", tree=t, node=node_id)
        )
        return
    if not _is_number(threshold):
        diagnostics.append(
            Diagnostic(code="SchemaError", message="split threshold must be a number.", tree=t, node=node_id)
        )
        return

    lb, ub = payload["domain"][feature]
    if not lb < threshold < ub:
        diagnostics.append(
            Diagnostic(
                code="DomainError",
                message=f"threshold {threshold} is not strictly inside ({lb}, {ub}).",
                tree=t,
                node=node_id,
            )
        )


def validate_payload(payload: Any) -> ValidationReport:
    """Collects every schema, domain and structure problem of a raw ensemble document."""

    diagnostics: list[Diagnostic] = []
    if not isinstance(payload, dict):
        return ValidationReport(diagnostics=[Diagnostic(code="SchemaError", message="document must be an object.")])

    num_features = _validate_domain(payload, diagnostics)
    if num_features is None:
        return ValidationReport(diagnostics=diagnostics)

    trees = payload.get("trees")
    if not isinstance(trees, list) or not trees:
        diagnostics.append(Diagnostic(code="SchemaError", message="trees must be a non-empty list."))
        return ValidationReport(diagnostics=diagnostics)

    weights = payload.get("weights")
    if weights is not None and (
        not isinstance(weights, list) or len(weights) != len(trees) or not all(_is_number(w) for w in weights)
    ):
        diagnostics.append(Diagnostic(code="SchemaError", message=f"weights must list {len(trees)} numbers."))

    for t, tree in enumerate(trees):
        _validate_tree(t, tree, payload, num_features, diagnostics)

    return ValidationReport(diagnostics=diagnostics)


def validate(ensemble: TreeEnsemble | dict | str) -> ValidationReport:
    if isinstance(ensemble, TreeEnsemble):
        payload = ensemble.to_payload()
    elif isinstance(ensemble, str):
        try:
            payload = json.loads(ensemble)
        except json.JSONDecodeError as e:
            return ValidationReport(diagnostics=[Diagnostic(code="SchemaError", message=f"invalid JSON: {e}")])
    else:
        payload = ensemble

    return validate_payload(payload)


def build_ensemble(payload: dict) -> TreeEnsemble:
    """
    Builds a validated ensemble from a raw document.

    Args:
        payload: Mapping with num_features, domain, trees and optional weights (default 1/T each).

    Returns:
        TreeEnsemble: The ensemble.

    Raises:
        SchemaError, DomainError, StructureError: The class of the first problem found.
    """

    report = validate_payload(payload)
    if not report.ok:
        first = report.diagnostics[0]
        logger.debug(f"Rejected ensemble with {len(report.diagnostics)} problems.")

        raise ERROR_TYPES[first.code](report.to_text())

    trees = []
    for raw_tree in payload["trees"]:
        nodes: dict[int, SplitNode | LeafNode] = {}
        for raw in raw_tree["nodes"]:
            if "feature" in raw:
                nodes[raw["id"]] = SplitNode(
                    id=raw["id"],
                    feature=raw["feature"],
                    threshold=float(raw["threshold"]),
                    left=raw["left"],
                    right=raw["right"],
                )
            else:
                nodes[raw["id"]] = LeafNode(id=raw["id"], value=float(raw["value"]))
        trees.append(DecisionTree(nodes=nodes, root=raw_tree["root"]))

    num_trees = len(trees)
    weights = payload.get("weights") or [1.0 / num_trees] * num_trees

    return TreeEnsemble(
        num_features=payload["num_features"],
        domain=[(float(lb), float(ub)) for lb, ub in payload["domain"]],
        trees=trees,
        weights=[float(w) for w in weights],
    )


def parse_ensemble(text: str) -> TreeEnsemble:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Ensemble document is not valid JSON: {e}") from e

    return build_ensemble(payload)


def evaluate_tree(tree: DecisionTree, w: list[float] | np.ndarray) -> float:
    node = tree.nodes[tree.root]
    while isinstance(node, SplitNode):
        node = tree.nodes[node.left] if w[node.feature] <= node.threshold else tree.nodes[node.right]

    return node.value


def evaluate(ensemble: TreeEnsemble, w: list[float] | np.ndarray) -> float:
    """Weighted prediction at w, routing left on w[feature] <= threshold."""

    if len(w) != ensemble.num_features:
        raise OutOfDomain(f"Expected {ensemble.num_features} features, got {len(w)}.")
    for i, (lb, ub) in enumerate(ensemble.domain):
        if not lb <= w[i] <= ub:
            raise OutOfDomain(f"w[{i}]={w[i]} is outside [{lb}, {ub}].")

    return float(sum(weight * evaluate_tree(tree, w) for weight, tree in zip(ensemble.weights, ensemble.trees)))
