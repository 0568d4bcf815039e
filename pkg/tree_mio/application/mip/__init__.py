from .core import model_stats, relax
from .lp_format import LpData, read_lp, write_lp

__all__ = ["LpData", "model_stats", "read_lp", "relax", "write_lp"]
