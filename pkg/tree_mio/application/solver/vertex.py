import itertools
from collections.abc import Mapping

import numpy as np
import scipy.linalg

from tree_mio.domain.exceptions import DimensionMismatch, SizeLimit
from tree_mio.domain.models import MipModel
from tree_mio.domain.types import Sense

from .config import SolverConfig

RANK_TOL = 1e-9


def _point_vector(model: MipModel, point: Mapping[str, float]) -> np.ndarray:
    names = [variable.name for variable in model.variables]
    unknown = set(point) - set(names)
    missing = [name for name in names if name not in point]
    if unknown or missing:
        raise DimensionMismatch(
            f"Point does not match model '{model.name}': missing {missing[:5]}, unknown {sorted(unknown)[:5]}."
        )

    return np.array([float(point[name]) for name in names])


def complete_point(model: MipModel, partial: Mapping[str, float]) -> dict[str, float]:
    """
    Fills in variables determined by equality rows with exactly one unknown, such as the output y.

    Args:
        model: The model.
        partial: Values keyed by variable name; variables not listed are treated as unknown.

    Returns:
        dict: The completed point. Variables that stay undetermined are left out.
    """

    values = {name: float(value) for name, value in partial.items()}
    names = [variable.name for variable in model.variables]
    progress = True
    while progress:
        progress = False
        for constraint in model.constraints:
            if constraint.sense != Sense.EQ:
                continue
            unknown = [(var_id, coeff) for var_id, coeff in constraint.row if names[var_id] not in values]
            if len(unknown) != 1:
                continue
            var_id, coeff = unknown[0]
            known = sum(c * values[names[v]] for v, c in constraint.row if v != var_id)
            values[names[var_id]] = (constraint.rhs - known) / coeff
            progress = True

    return values


def _active_rows(model: MipModel, x: np.ndarray, tol: float) -> tuple[bool, list[np.ndarray]]:
    n = len(x)
    feasible = True
    active: list[np.ndarray] = []
    for constraint in model.constraints:
        lhs = constraint.activity(x)
        if constraint.violation(x) > tol:
            feasible = False
        if constraint.sense == Sense.EQ or abs(lhs - constraint.rhs) <= tol:
            row = np.zeros(n)
            for var_id, coeff in constraint.row:
                row[var_id] = coeff
            active.append(row)

    for j, variable in enumerate(model.variables):
        if x[j] < variable.lower - tol or x[j] > variable.upper + tol:
            feasible = False
        if abs(x[j] - variable.lower) <= tol or abs(x[j] - variable.upper) <= tol:
            row = np.zeros(n)
            row[j] = 1.0
            active.append(row)

    return feasible, active


def _rank(rows: list[np.ndarray]) -> int:
    if not rows:
        return 0
    matrix = np.vstack(rows)
    R, _ = scipy.linalg.qr(matrix, mode="r", pivoting=True)
    diagonal = np.abs(np.diag(R))

    return int(np.sum(diagonal > RANK_TOL))


def is_vertex(model: MipModel, point: Mapping[str, float], config: SolverConfig | None = None) -> bool:
    """
    True when the point is feasible for the model read as a polyhedron and its active constraints,
    bounds included, have full column rank.

    Raises:
        DimensionMismatch: If the point does not assign exactly the model's variables.
    """

    config = config or SolverConfig.from_settings()
    x = _point_vector(model, point)
    feasible, active = _active_rows(model, x, config.feas_tol)
    if not feasible:
        return False

    return _rank(active) == model.num_variables


def enumerate_vertices(
    model: MipModel, config: SolverConfig | None = None, max_vars: int = 12
) -> list[dict[str, float]]:
    """
    Lists every vertex of the model's polyhedron by solving each candidate basis of active constraints.

    Raises:
        SizeLimit: If the model has more than max_vars variables.
    """

    config = config or SolverConfig.from_settings()
    n = model.num_variables
    if n > max_vars:
        raise SizeLimit(f"Vertex enumeration is limited to {max_vars} variables, model has {n}.")

    dense = model.to_dense()
    equality_rows = [dense.A[r] for r, sense in enumerate(dense.senses) if sense == Sense.EQ]
    equality_rhs = [dense.b[r] for r, sense in enumerate(dense.senses) if sense == Sense.EQ]
    candidates: list[tuple[np.ndarray, float]] = [
        (dense.A[r], dense.b[r]) for r, sense in enumerate(dense.senses) if sense != Sense.EQ
    ]
    for j in range(n):
        for bound in (dense.lower[j], dense.upper[j]):
            if np.isfinite(bound):
                unit = np.zeros(n)
                unit[j] = 1.0
                candidates.append((unit, bound))

    equality_rank = _rank(equality_rows)
    needed = n - equality_rank
    vertices: dict[tuple, dict[str, float]] = {}
    for combo in itertools.combinations(range(len(candidates)), needed):
        rows = equality_rows + [candidates[k][0] for k in combo]
        rhs = equality_rhs + [candidates[k][1] for k in combo]
        matrix = np.vstack(rows) if rows else np.zeros((0, n))
        if _rank(list(matrix)) < n:
            continue
        x, *_ = np.linalg.lstsq(matrix, np.array(rhs), rcond=None)
        if np.max(np.abs(matrix @ x - np.array(rhs)), initial=0.0) > config.feas_tol:
            continue
        feasible, _ = _active_rows(model, x, config.feas_tol)
        if not feasible:
            continue
        key = tuple(np.round(x, 7))
        vertices.setdefault(key, dict(zip(dense.names, map(float, x))))

    return list(vertices.values())
