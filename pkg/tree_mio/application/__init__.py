from . import analysis, fixtures, formulations, mip, solver, trees

__all__ = ["analysis", "fixtures", "formulations", "mip", "solver", "trees"]
