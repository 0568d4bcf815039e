from . import datasets, ensembles, exceptions, models, results, types

__all__ = ["datasets", "ensembles", "exceptions", "models", "results", "types"]
