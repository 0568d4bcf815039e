from .branch_and_bound import solve_mip
from .config import SolverConfig
from .simplex import solve_lp
from .vertex import complete_point, enumerate_vertices, is_vertex

__all__ = ["SolverConfig", "complete_point", "enumerate_vertices", "is_vertex", "solve_lp", "solve_mip"]
