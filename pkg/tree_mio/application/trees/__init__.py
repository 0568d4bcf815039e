from .leaves import ensemble_leaves, extract_leaves
from .parsing import build_ensemble, evaluate, parse_ensemble, validate
from .split_index import SplitIndex, SplitInfo, build_split_index

__all__ = [
    "SplitIndex",
    "SplitInfo",
    "build_ensemble",
    "build_split_index",
    "ensemble_leaves",
    "evaluate",
    "extract_leaves",
    "parse_ensemble",
    "validate",
]
