import math

from loguru import logger

from tree_mio.application.mip.core import relax
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.domain.exceptions import RoleMismatch
from tree_mio.domain.models import MipModel
from tree_mio.domain.results import ConstraintViolation, ContainmentReport
from tree_mio.domain.types import ObjectiveSense, Sense, SolveStatus


def _worst_violation(inner: MipModel, terms: list[tuple[int, float]], rhs: float, config: SolverConfig) -> float:
    """max of terms - rhs over the inner relaxation."""

    probe = inner.model_copy(deep=True)
    probe.set_objective(terms, ObjectiveSense.MAXIMIZE)
    result = solve_lp(probe, config)
    if result.status == SolveStatus.UNBOUNDED:
        return math.inf
    if not result.is_optimal:
        return -math.inf

    return result.objective - rhs


def check_containment(inner: MipModel, outer: MipModel, config: SolverConfig | None = None) -> ContainmentReport:
    """
    Tests whether the LP relaxation of `inner` lies inside that of `outer`, matching variables by role.

    Every outer row (and finite bound) is maximized over the inner relaxation; a positive optimum is a
    violation.

    Raises:
        RoleMismatch: If an outer variable has no role or no counterpart in the inner model.
    """

    config = config or SolverConfig.from_settings()
    inner_relaxed = relax(inner)
    role_of = {var_id: key for key, var_id in outer.roles.items()}

    def mapped(var_id: int) -> int:
        if var_id not in role_of:
            raise RoleMismatch(f"Variable '{outer.variables[var_id].name}' of '{outer.name}' has no role.")
        key = role_of[var_id]
        if key not in inner.roles:
            raise RoleMismatch(f"Role '{key}' of '{outer.name}' is missing from '{inner.name}'.")

        return inner.roles[key]

    checks: list[tuple[str, list[tuple[int, float]], float]] = []
    for constraint in outer.constraints:
        terms = [(mapped(v), c) for v, c in constraint.row]
        if constraint.sense in (Sense.LE, Sense.EQ):
            checks.append((constraint.name, terms, constraint.rhs))
        if constraint.sense in (Sense.GE, Sense.EQ):
            checks.append((constraint.name, [(v, -c) for v, c in terms], -constraint.rhs))
    for var_id, variable in enumerate(outer.variables):
        if math.isfinite(variable.upper):
            checks.append((f"{variable.name}_ub", [(mapped(var_id), 1.0)], variable.upper))
        if math.isfinite(variable.lower):
            checks.append((f"{variable.name}_lb", [(mapped(var_id), -1.0)], -variable.lower))

    worst: dict[str, float] = {}
    for name, terms, rhs in checks:
        violation = _worst_violation(inner_relaxed, terms, rhs, config)
        if violation > config.feas_tol:
            worst[name] = max(worst.get(name, 0.0), violation)

    violations = [ConstraintViolation(name=name, max_violation=value) for name, value in worst.items()]
    max_violation = max(worst.values(), default=0.0)
    logger.debug(f"Containment {inner.name} in {outer.name}: {len(violations)} violated rows.")

    return ContainmentReport(
        inner=inner.name,
        outer=outer.name,
        violations=violations,
        max_violation=max_violation,
        contained=not violations,
    )
