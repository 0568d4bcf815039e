"""
Brute-force optimum of an ensemble over the grid of pooled split thresholds.

"open" cells follow the routing rule of `evaluate` (left on w <= threshold). "closed" cells add the
threshold hyperplanes as cells of their own, on which every tree may pick any leaf whose closed box
touches the cell; this matches models that describe leaves by closed boxes.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from loguru import logger

from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.application.trees.leaves import ensemble_leaves
from tree_mio.application.trees.parsing import evaluate
from tree_mio.application.trees.split_index import build_split_index
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import AnalysisError, CellLimit
from tree_mio.domain.models import LinearRow, MipModel
from tree_mio.domain.results import OracleResult
from tree_mio.domain.types import ObjectiveSense, Sense

MAX_CELLS = 1_000_000
INTERIOR_TOL = 1e-9


@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    lo_open: bool
    hi_open: bool

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def representative(self) -> float:
        return (self.lo + self.hi) / 2.0


def _pieces(thresholds: list[float], lb: float, ub: float, closed: bool) -> list[Piece]:
    bounds = [lb, *thresholds, ub]
    pieces = []
    for j in range(len(bounds) - 1):
        pieces.append(Piece(bounds[j], bounds[j + 1], lo_open=j > 0, hi_open=closed and j < len(bounds) - 2))
        if closed and j < len(bounds) - 2:
            pieces.append(Piece(bounds[j + 1], bounds[j + 1], lo_open=False, hi_open=False))

    return pieces


def _feasible_point(cell: tuple[Piece, ...], rows: list[LinearRow], config: SolverConfig) -> list[float] | None:
    model = MipModel(name="cell")
    w = [model.add_variable(f"w{i + 1}", piece.lo, piece.hi) for i, piece in enumerate(cell)]
    t = model.add_variable("t", 0.0, 1.0)
    needs_interior = False
    for i, piece in enumerate(cell):
        if piece.lo_open:
            model.add_constraint(f"open_lo_{i + 1}", [(w[i], 1.0), (t, -1.0)], Sense.GE, piece.lo)
            needs_interior = True
        if piece.hi_open:
            model.add_constraint(f"open_hi_{i + 1}", [(w[i], 1.0), (t, 1.0)], Sense.LE, piece.hi)
            needs_interior = True
    for r, row in enumerate(rows):
        model.add_constraint(f"side_{r + 1}", [(w[i], coeff) for i, coeff in row.coeffs.items()], row.sense, row.rhs)
    model.set_objective([(t, 1.0)], ObjectiveSense.MAXIMIZE)

    result = solve_lp(model, config)
    if not result.is_optimal or (needs_interior and result.objective <= INTERIOR_TOL):
        return None

    return [result.values[f"w{i + 1}"] for i in range(len(cell))]


def oracle_optimum(
    ensemble: TreeEnsemble,
    extra_constraints: list[LinearRow] | None = None,
    sense: ObjectiveSense = ObjectiveSense.MAXIMIZE,
    semantics: Literal["open", "closed"] = "open",
    config: SolverConfig | None = None,
) -> OracleResult:
    """
    Enumerates every cell of the threshold grid and returns the best value over the feasible ones.

    Raises:
        CellLimit: If the grid has more than one million cells.
        AnalysisError: If the side constraints leave no feasible cell.
    """

    if not ensemble.is_bounded:
        raise AnalysisError("The oracle needs finite domain bounds.")

    config = config or SolverConfig.from_settings()
    rows = extra_constraints or []
    closed = semantics == "closed"
    index = build_split_index(ensemble)
    per_feature = [
        _pieces(index.thresholds[i], lb, ub, closed) for i, (lb, ub) in enumerate(ensemble.domain)
    ]
    num_cells = math.prod(len(pieces) for pieces in per_feature)
    if num_cells > MAX_CELLS:
        raise CellLimit(f"The threshold grid has {num_cells} cells (limit {MAX_CELLS}).")

    boxes = ensemble_leaves(ensemble)
    better = (lambda a, b: a > b) if sense == ObjectiveSense.MAXIMIZE else (lambda a, b: a < b)
    pick = max if sense == ObjectiveSense.MAXIMIZE else min

    best_value, best_w = None, None
    for cell in itertools.product(*per_feature):
        if closed:
            value = 0.0
            for weight, tree_boxes in zip(ensemble.weights, boxes):
                touching = [
                    weight * box.score
                    for box in tree_boxes
                    if all(box.b[i] <= piece.lo and piece.hi <= box.u[i] for i, piece in enumerate(cell))
                ]
                value += pick(touching)
        else:
            value = evaluate(ensemble, [piece.representative for piece in cell])

        if best_value is not None and not better(value, best_value):
            continue
        if rows:
            w = _feasible_point(cell, rows, config)
            if w is None:
                continue
        else:
            w = [piece.representative for piece in cell]
        best_value, best_w = value, w

    if best_value is None:
        raise AnalysisError("No cell of the threshold grid satisfies the side constraints.")

    logger.debug(f"Oracle ({semantics}) checked {num_cells} cells, best {best_value:.6g}.")

    return OracleResult(w=[float(v) for v in np.asarray(best_w)], value=float(best_value), cells_checked=num_cells, semantics=semantics)
