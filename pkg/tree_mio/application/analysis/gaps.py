import math

from tree_mio.application.formulations.constraints import attach_constraints
from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.mip.core import relax
from tree_mio.application.solver.branch_and_bound import solve_mip
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import SolverError
from tree_mio.domain.models import LinearRow
from tree_mio.domain.results import GapReport
from tree_mio.domain.types import FormulationKind


GAP_TOL = 1e-4


def gap_percent(lp_bound: float, mip_opt: float) -> float:
    """Signed distance of the LP bound above the MIP optimum, in percent of |mip_opt|."""

    return 100.0 * (lp_bound - mip_opt) / max(abs(mip_opt), 1e-9)


def relaxation_gap(
    ensemble: TreeEnsemble,
    kind: FormulationKind | str,
    config: SolverConfig | None = None,
    side_constraints: list[LinearRow] | None = None,
    big_m: float | None = None,
) -> GapReport:
    config = config or SolverConfig.from_settings()
    model = build_formulation(ensemble, kind, big_m=big_m)
    if side_constraints:
        model = attach_constraints(model, side_constraints)

    lp = solve_lp(relax(model), config)
    if not lp.is_optimal:
        raise SolverError(f"LP relaxation of {kind} ended with status {lp.status}.")
    mip = solve_mip(model, config)
    mip_opt = mip.objective if mip.objective is not None else math.nan
    gap = gap_percent(lp.objective, mip_opt) if mip.objective is not None else math.nan
    # A maximization relaxation can never sit below an optimal integer solution.
    if mip.is_optimal and gap < -GAP_TOL:
        raise SolverError(f"LP bound {lp.objective:.10g} of {kind} is below the MIP optimum {mip_opt:.10g}.")

    return GapReport(
        kind=FormulationKind(kind),
        lp_bound=lp.objective,
        mip_opt=mip_opt,
        gap_percent=gap,
        mip_status=mip.status,
    )
