class TreeMioException(Exception):
    pass


class ImproperlyConfigured(TreeMioException):
    pass


# --- Ensembles and fixtures ---


class EnsembleError(TreeMioException):
    pass


class SchemaError(EnsembleError):
    pass


class DomainError(EnsembleError):
    pass


class StructureError(EnsembleError):
    pass


class OutOfDomain(EnsembleError):
    pass


class UnknownFixture(EnsembleError):
    pass


# --- Models and formulations ---


class ModelError(TreeMioException):
    pass


class ModelNameError(ModelError):
    """Raised when a variable or constraint name cannot be written to an LP file."""


class MismatchError(ModelError):
    pass


class RoleMismatch(ModelError):
    pass


class UnsupportedFormulation(ModelError):
    pass


class UnboundedDomain(ModelError):
    pass


class DimensionMismatch(ModelError):
    pass


# --- Solver ---


class SolverError(TreeMioException):
    pass


class IterationLimit(SolverError):
    pass


class NodeLimit(SolverError):
    pass


class TimeLimit(SolverError):
    pass


# --- Analysis ---


class AnalysisError(TreeMioException):
    pass


class CellLimit(AnalysisError):
    pass


class EntryRange(AnalysisError):
    pass


class SizeLimit(AnalysisError):
    pass


class NotNested(AnalysisError):
    pass


class DimensionError(AnalysisError):
    pass
