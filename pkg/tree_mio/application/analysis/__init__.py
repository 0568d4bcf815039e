from .containment import check_containment
from .gaps import gap_percent, relaxation_gap
from .implication import check_implication_lemma2
from .oracle import oracle_optimum
from .probes import probe_integrality
from .sharpness import check_sharpness_1d, convex_hull, graph_breakpoints, projected_vertices_outside_hull
from .tu import TuMatrix, check_tu, expset_tu_matrix, ghouila_houri_coloring

__all__ = [
    "TuMatrix",
    "check_containment",
    "check_implication_lemma2",
    "check_sharpness_1d",
    "check_tu",
    "convex_hull",
    "expset_tu_matrix",
    "gap_percent",
    "ghouila_houri_coloring",
    "graph_breakpoints",
    "oracle_optimum",
    "probe_integrality",
    "projected_vertices_outside_hull",
    "relaxation_gap",
]
