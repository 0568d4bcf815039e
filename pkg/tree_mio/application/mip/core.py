import math

from tree_mio.domain.models import MipModel, ModelStats
from tree_mio.domain.types import Integrality


def relax(model: MipModel) -> MipModel:
    """Returns a copy with every binary variable made continuous on its bounds."""

    variables = [
        variable.model_copy(update={"integrality": Integrality.CONTINUOUS}) if variable.is_binary else variable
        for variable in model.variables
    ]

    return model.model_copy(update={"variables": variables, "name": model.name}, deep=True)


def model_stats(model: MipModel) -> ModelStats:
    counted = [constraint for constraint in model.constraints if not constraint.definition]
    selector_bounds = sum(
        math.isfinite(model.variables[var_id].lower) + math.isfinite(model.variables[var_id].upper)
        for var_id in model.role_ids("z")
    )

    return ModelStats(
        num_variables=model.num_variables,
        num_constraints=len(counted),
        num_binaries=len(model.binary_ids),
        num_nonzeros=sum(len(constraint.row) for constraint in counted),
        num_definitions=len(model.constraints) - len(counted),
        num_selector_bounds=selector_bounds,
    )
