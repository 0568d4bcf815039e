from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from tree_mio.settings import settings


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    feas_tol: float = Field(default=1e-7, gt=0)
    int_tol: float = Field(default=1e-6, gt=0)
    max_lp_iters: int = Field(default=50_000, gt=0)
    max_bnb_nodes: int = Field(default=200_000, gt=0)
    branching: Literal["most_fractional"] = "most_fractional"
    node_selection: Literal["best_bound"] = "best_bound"
    time_limit_s: float | None = Field(default=None, gt=0)
    raise_on_limit: bool = False

    @classmethod
    def from_settings(cls, **overrides) -> "SolverConfig":
        values = {
            "feas_tol": settings.TREEMIO_FEAS_TOL,
            "int_tol": settings.TREEMIO_INT_TOL,
            "max_lp_iters": settings.TREEMIO_MAX_LP_ITERS,
            "max_bnb_nodes": settings.TREEMIO_MAX_BNB_NODES,
        }
        values.update(overrides)

        return cls(**values)
