import re

from tree_mio.domain.exceptions import DimensionMismatch, SchemaError, UnsupportedFormulation
from tree_mio.domain.models import LinearRow, MipModel, role_key
from tree_mio.domain.types import ObjectiveSense, Sense

TERM = re.compile(r"([+-]?)\s*(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+)?\s*\*?\s*w(\d+)")
RELATION = re.compile(r"^(.*?)(<=|>=|=)(.*)$")


def parse_constraint(text: str, num_features: int) -> LinearRow:
    """
    Parses a side constraint such as "2*w1 - w2 <= 3" (features are 1-based in the text).

    Raises:
        SchemaError: If the text does not follow the grammar or names a feature outside 1..num_features.
    """

    match = RELATION.match(text.replace(" ", ""))
    if match is None:
        raise SchemaError(f"Constraint '{text}' needs one of <=, >=, =.")

    lhs, sense, rhs = match.groups()
    try:
        rhs_value = float(rhs)
    except ValueError as e:
        raise SchemaError(f"Constraint '{text}' needs a numeric right-hand side.") from e

    coeffs: dict[int, float] = {}
    consumed = 0
    for term in TERM.finditer(lhs):
        if term.start() != consumed:
            break
        consumed = term.end()
        sign, value, feature = term.groups()
        i = int(feature) - 1
        if not 0 <= i < num_features:
            raise SchemaError(f"Constraint '{text}' uses w{feature} but the ensemble has {num_features} features.")
        coeff = float(value) if value else 1.0
        coeffs[i] = coeffs.get(i, 0.0) + (-coeff if sign == "-" else coeff)

    if consumed != len(lhs) or not coeffs:
        raise SchemaError(f"Cannot parse the left-hand side of constraint '{text}'.")

    return LinearRow(coeffs=coeffs, sense=Sense(sense), rhs=rhs_value, name=None)


def attach_constraints(model: MipModel, rows: list[LinearRow]) -> MipModel:
    """
    Adds linear side constraints over w to a copy of the model.

    Raises:
        UnsupportedFormulation: If the model has no w variables (binary split formulations).
        DimensionMismatch: If a row names a feature the model does not have.
    """

    if not model.role_ids("w"):
        raise UnsupportedFormulation(f"Model '{model.name}' has no w variables to constrain.")

    constrained = model.model_copy(deep=True)
    for r, row in enumerate(rows):
        terms = []
        for i, coeff in row.coeffs.items():
            if role_key("w", i) not in constrained.roles:
                raise DimensionMismatch(f"Model '{model.name}' has no feature w{i + 1}.")
            terms.append((constrained.role("w", i), coeff))
        constrained.add_constraint(row.name or f"side_{r + 1}", terms, row.sense, row.rhs)

    return constrained


def set_objective(
    model: MipModel,
    sense: ObjectiveSense = ObjectiveSense.MAXIMIZE,
    terms: list[tuple[int, float]] | None = None,
) -> MipModel:
    """Returns a copy optimizing y in the given sense, or a custom linear objective when terms are given."""

    updated = model.model_copy(deep=True)
    updated.set_objective(terms if terms is not None else [(updated.role("y"), 1.0)], sense)

    return updated
