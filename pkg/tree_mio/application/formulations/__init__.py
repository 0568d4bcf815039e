from .binary_split import add_elbow
from .constraints import attach_constraints, parse_constraint, set_objective
from .dispatcher import (
    FORMULATION_REGISTRY,
    FormulationDispatcher,
    build_bigm,
    build_expset,
    build_facet,
    build_formulation,
    build_misic,
    build_projected,
    build_union_ext,
    get_available_formulations,
)

__all__ = [
    "FORMULATION_REGISTRY",
    "FormulationDispatcher",
    "add_elbow",
    "attach_constraints",
    "build_bigm",
    "build_expset",
    "build_facet",
    "build_formulation",
    "build_misic",
    "build_projected",
    "build_union_ext",
    "get_available_formulations",
    "parse_constraint",
    "set_objective",
]
