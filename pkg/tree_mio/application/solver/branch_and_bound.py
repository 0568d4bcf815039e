import heapq
import itertools
import time

import numpy as np
from loguru import logger

from tree_mio.domain.exceptions import IterationLimit, NodeLimit, TimeLimit
from tree_mio.domain.models import MipModel
from tree_mio.domain.results import SolveResult
from tree_mio.domain.types import SolveStatus

from .config import SolverConfig
from .simplex import solve_dense

LIMIT_ERRORS = {
    SolveStatus.ITERATION_LIMIT: IterationLimit,
    SolveStatus.NODE_LIMIT: NodeLimit,
    SolveStatus.TIME_LIMIT: TimeLimit,
}


def _branching_variable(x: np.ndarray, binary_ids: list[int], int_tol: float) -> int | None:
    """Most fractional binary, lowest id on ties."""

    best, best_score = None, int_tol
    for j in binary_ids:
        score = min(x[j] - np.floor(x[j]), np.ceil(x[j]) - x[j])
        if score > best_score:
            best, best_score = j, score

    return best


def solve_mip(model: MipModel, config: SolverConfig | None = None) -> SolveResult:
    """
    Best-bound branch and bound over the binary variables of the model.

    Branching fixes a binary to 0 then 1. Nodes with equal bounds are expanded first in, first out.

    Raises:
        IterationLimit, NodeLimit, TimeLimit: On exhausted budgets when config.raise_on_limit is set.
    """

    config = config or SolverConfig.from_settings()
    form = model.to_dense()
    binary_ids = model.binary_ids
    sign = 1.0 if form.maximize else -1.0
    started = time.monotonic()

    incumbent: tuple[float, np.ndarray] | None = None
    heap: list[tuple[float, int, np.ndarray, np.ndarray, np.ndarray]] = []
    counter = itertools.count()
    nodes = 0
    iterations = 0
    status = SolveStatus.OPTIMAL

    def prune_level() -> float:
        if incumbent is None:
            return -np.inf

        return incumbent[0] + 1e-9 * max(1.0, abs(incumbent[0]))

    def process(lower: np.ndarray, upper: np.ndarray) -> SolveStatus:
        nonlocal incumbent, nodes, iterations
        outcome = solve_dense(form, lower, upper, config)
        nodes += 1
        iterations += outcome.iterations
        if outcome.status != SolveStatus.OPTIMAL:
            return outcome.status
        if outcome.value <= prune_level():
            return SolveStatus.OPTIMAL

        j = _branching_variable(outcome.x, binary_ids, config.int_tol)
        if j is None:
            incumbent = (outcome.value, outcome.x)
        else:
            heapq.heappush(heap, (-outcome.value, next(counter), lower, upper, outcome.x))

        return SolveStatus.OPTIMAL

    root = process(form.lower.copy(), form.upper.copy())
    if root in (SolveStatus.INFEASIBLE, SolveStatus.UNBOUNDED):
        return SolveResult(status=root, nodes=nodes, iterations=iterations)
    if root == SolveStatus.ITERATION_LIMIT:
        status = root

    while heap and status == SolveStatus.OPTIMAL:
        neg_bound, _, lower, upper, x = heapq.heappop(heap)
        if -neg_bound <= prune_level():
            continue
        if nodes >= config.max_bnb_nodes:
            heapq.heappush(heap, (neg_bound, next(counter), lower, upper, x))
            status = SolveStatus.NODE_LIMIT
            break
        if config.time_limit_s is not None and time.monotonic() - started > config.time_limit_s:
            heapq.heappush(heap, (neg_bound, next(counter), lower, upper, x))
            status = SolveStatus.TIME_LIMIT
            break

        j = _branching_variable(x, binary_ids, config.int_tol)
        for value in (0.0, 1.0):
            child_lower, child_upper = lower.copy(), upper.copy()
            child_lower[j] = child_upper[j] = value
            child = process(child_lower, child_upper)
            if child == SolveStatus.ITERATION_LIMIT:
                # the parent bound still covers the unsolved child
                heapq.heappush(heap, (neg_bound, next(counter), lower, upper, x))
                status = child
                break

    open_bounds = [-entry[0] for entry in heap]
    if incumbent is not None:
        open_bounds.append(incumbent[0])
    bound = max(open_bounds) if open_bounds else None

    logger.debug(f"B&B '{model.name}': {status} after {nodes} nodes.")
    if status != SolveStatus.OPTIMAL and config.raise_on_limit:
        raise LIMIT_ERRORS[status](f"Branch and bound on '{model.name}' stopped with {status} after {nodes} nodes.")

    if incumbent is None:
        if status == SolveStatus.OPTIMAL:
            return SolveResult(status=SolveStatus.INFEASIBLE, nodes=nodes, iterations=iterations)

        return SolveResult(
            status=status, nodes=nodes, iterations=iterations, best_bound=None if bound is None else sign * bound
        )

    value, x = incumbent
    gap = 0.0 if status == SolveStatus.OPTIMAL else (bound - value) / max(1.0, abs(value))

    return SolveResult(
        status=status,
        objective=sign * value,
        values=dict(zip(form.names, map(float, x))),
        nodes=nodes,
        iterations=iterations,
        best_bound=sign * (value if status == SolveStatus.OPTIMAL else bound),
        gap=gap,
    )
