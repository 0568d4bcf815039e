from enum import StrEnum


class FormulationKind(StrEnum):
    MISIC = "misic"
    BIGM = "bigm"
    UNION_EXT = "union_ext"
    PROJECTED = "projected"
    FACET = "facet"
    EXPSET = "expset"
    ELBOW = "elbow"
    EXPSET_ELBOW = "expset_elbow"

    @property
    def uses_split_binaries(self) -> bool:
        """True for the formulations built on the binary x representation of w."""

        return self in BINARY_SPLIT_FAMILY


BINARY_SPLIT_FAMILY = frozenset(
    {
        FormulationKind.MISIC,
        FormulationKind.EXPSET,
        FormulationKind.ELBOW,
        FormulationKind.EXPSET_ELBOW,
    }
)

FEATURE_FAMILY = frozenset(
    {
        FormulationKind.BIGM,
        FormulationKind.UNION_EXT,
        FormulationKind.PROJECTED,
        FormulationKind.FACET,
    }
)


class Sense(StrEnum):
    LE = "<="
    GE = ">="
    EQ = "="


class ObjectiveSense(StrEnum):
    MAXIMIZE = "max"
    MINIMIZE = "min"


class Integrality(StrEnum):
    CONTINUOUS = "continuous"
    BINARY = "binary"


class SolveStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"
    NODE_LIMIT = "node_limit"
    TIME_LIMIT = "time_limit"

    @property
    def is_limit(self) -> bool:
        return self in (SolveStatus.ITERATION_LIMIT, SolveStatus.NODE_LIMIT, SolveStatus.TIME_LIMIT)
