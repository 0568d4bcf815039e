import numpy as np
from loguru import logger

from tree_mio.application.fixtures.synthetic import make_rng
from tree_mio.application.mip.core import relax
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.domain.models import MipModel
from tree_mio.domain.results import ProbeReport
from tree_mio.domain.types import ObjectiveSense


def probe_integrality(
    model: MipModel,
    roles: list[str] | None = None,
    n_objectives: int = 200,
    seed: int = 0,
    config: SolverConfig | None = None,
) -> ProbeReport:
    """
    Solves the LP relaxation under random objectives and counts optima with a fractional checked variable.

    Args:
        model: The model; its relaxation is probed.
        roles: Role kinds to check, e.g. ["z"]. Defaults to the binaries plus the leaf selectors z.
        n_objectives: Number of objectives, each drawn uniformly from [-1, 1] per variable.
        seed: PCG64 seed.
        config: Solver settings; int_tol decides fractionality.
    """

    config = config or SolverConfig.from_settings()
    if roles is None:
        checked = sorted(set(model.binary_ids) | set(model.role_ids("z")))
        roles = sorted({key.split(":")[0] for key, var_id in model.roles.items() if var_id in checked})
    else:
        checked = sorted({var_id for kind in roles for var_id in model.role_ids(kind)})

    relaxed = relax(model)
    rng = make_rng(seed)
    names = [relaxed.variables[var_id].name for var_id in checked]
    fractional, max_distance = 0, 0.0
    for _ in range(n_objectives):
        costs = rng.uniform(-1.0, 1.0, size=relaxed.num_variables)
        relaxed.set_objective(list(enumerate(costs)), ObjectiveSense.MAXIMIZE)
        result = solve_lp(relaxed, config)
        if not result.is_optimal:
            logger.warning(f"Probe objective on '{model.name}' ended with status {result.status}.")
            continue
        values = np.array([result.values[name] for name in names])
        distance = float(np.max(np.minimum(np.abs(values - np.floor(values)), np.abs(np.ceil(values) - values)), initial=0.0))
        max_distance = max(max_distance, distance)
        if distance > config.int_tol:
            fractional += 1

    return ProbeReport(
        model_name=model.name,
        n_objectives=n_objectives,
        fractional_count=fractional,
        max_distance=max_distance,
        checked_roles=roles,
    )
