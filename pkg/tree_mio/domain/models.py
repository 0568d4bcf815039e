import math
import re
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr

from tree_mio.domain.exceptions import ModelNameError, RoleMismatch
from tree_mio.domain.types import FormulationKind, Integrality, ObjectiveSense, Sense

NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

Row = tuple[tuple[int, float], ...]


def role_key(kind: str, *index: int | str) -> str:
    """Builds the lookup key of a semantic variable, e.g. role_key("z", 0, 2) == "z:0:2"."""

    return ":".join([kind, *(str(i) for i in index)])


def check_name(name: str) -> str:
    if not NAME_PATTERN.match(name):
        raise ModelNameError(f"'{name}' does not match [A-Za-z_][A-Za-z0-9_]*.")

    return name


def merge_terms(terms: Iterable[tuple[int, float]]) -> Row:
    merged: dict[int, float] = {}
    for var_id, coeff in terms:
        merged[var_id] = merged.get(var_id, 0.0) + float(coeff)

    return tuple((var_id, coeff) for var_id, coeff in sorted(merged.items()) if coeff != 0.0)


class Variable(BaseModel):
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    name: str
    lower: float = 0.0
    upper: float = math.inf
    integrality: Integrality = Integrality.CONTINUOUS

    @property
    def is_binary(self) -> bool:
        return self.integrality == Integrality.BINARY


class LinearConstraint(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    row: Row
    sense: Sense
    rhs: float
    # Output-definition rows (y = ..., y_t = ...) are not counted as formulation constraints.
    definition: bool = False

    def activity(self, values: np.ndarray) -> float:
        return float(sum(coeff * values[var_id] for var_id, coeff in self.row))

    def violation(self, values: np.ndarray) -> float:
        lhs = self.activity(values)
        if self.sense == Sense.LE:
            return max(0.0, lhs - self.rhs)
        if self.sense == Sense.GE:
            return max(0.0, self.rhs - lhs)

        return abs(lhs - self.rhs)


class Objective(BaseModel):
    model_config = ConfigDict(frozen=True)

    sense: ObjectiveSense = ObjectiveSense.MAXIMIZE
    row: Row = ()


@dataclass
class DenseForm:
    names: list[str]
    c: np.ndarray
    A: np.ndarray
    senses: list[Sense]
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    binary: np.ndarray
    maximize: bool


class MipModel(BaseModel):
    """A mixed-integer linear model with named variables and semantic roles."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    name: str = "model"
    kind: FormulationKind | None = None
    variables: list[Variable] = []
    constraints: list[LinearConstraint] = []
    objective: Objective = Objective()
    roles: dict[str, int] = {}

    _name_index: dict[str, int] = PrivateAttr(default_factory=dict)

    def add_variable(
        self,
        name: str,
        lower: float = 0.0,
        upper: float = math.inf,
        integrality: Integrality = Integrality.CONTINUOUS,
        role: str | None = None,
    ) -> int:
        check_name(name)
        if name in self._names():
            raise ModelNameError(f"Variable '{name}' already exists in model '{self.name}'.")

        var_id = len(self.variables)
        self.variables.append(Variable(name=name, lower=lower, upper=upper, integrality=integrality))
        self._name_index[name] = var_id
        if role is not None:
            self.roles[role] = var_id

        return var_id

    def add_constraint(
        self,
        name: str,
        terms: Iterable[tuple[int, float]],
        sense: Sense,
        rhs: float,
        definition: bool = False,
    ) -> int:
        check_name(name)
        self.constraints.append(
            LinearConstraint(name=name, row=merge_terms(terms), sense=sense, rhs=float(rhs), definition=definition)
        )

        return len(self.constraints) - 1

    def set_objective(self, terms: Iterable[tuple[int, float]], sense: ObjectiveSense) -> None:
        self.objective = Objective(sense=sense, row=merge_terms(terms))

    def _names(self) -> dict[str, int]:
        if len(self._name_index) != len(self.variables):
            self._name_index = {variable.name: i for i, variable in enumerate(self.variables)}

        return self._name_index

    def var_id(self, name: str) -> int:
        try:
            return self._names()[name]
        except KeyError as e:
            raise RoleMismatch(f"Model '{self.name}' has no variable named '{name}'.") from e

    def role(self, kind: str, *index: int | str) -> int:
        key = role_key(kind, *index)
        try:
            return self.roles[key]
        except KeyError as e:
            raise RoleMismatch(f"Model '{self.name}' has no variable with role '{key}'.") from e

    def has_role(self, kind: str, *index: int | str) -> bool:
        return role_key(kind, *index) in self.roles

    def role_ids(self, kind: str) -> list[int]:
        prefix = f"{kind}:"

        return sorted(var_id for key, var_id in self.roles.items() if key == kind or key.startswith(prefix))

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def binary_ids(self) -> list[int]:
        return [i for i, variable in enumerate(self.variables) if variable.is_binary]

    def to_dense(self) -> DenseForm:
        n = self.num_variables
        A = np.zeros((len(self.constraints), n))
        for r, constraint in enumerate(self.constraints):
            for var_id, coeff in constraint.row:
                A[r, var_id] = coeff

        c = np.zeros(n)
        for var_id, coeff in self.objective.row:
            c[var_id] = coeff

        return DenseForm(
            names=[variable.name for variable in self.variables],
            c=c,
            A=A,
            senses=[constraint.sense for constraint in self.constraints],
            b=np.array([constraint.rhs for constraint in self.constraints], dtype=float),
            lower=np.array([variable.lower for variable in self.variables], dtype=float),
            upper=np.array([variable.upper for variable in self.variables], dtype=float),
            binary=np.array([variable.is_binary for variable in self.variables], dtype=bool),
            maximize=self.objective.sense == ObjectiveSense.MAXIMIZE,
        )


class ModelStats(BaseModel):
    """
    Model size. num_constraints excludes output definitions and variable bounds; num_selector_bounds counts the
    finite bound sides of the leaf selectors z, which some size conventions list as rows.
    """

    num_variables: int
    num_constraints: int
    num_binaries: int
    num_nonzeros: int
    num_definitions: int
    num_selector_bounds: int = 0

    @property
    def num_constraints_with_bounds(self) -> int:
        return self.num_constraints + self.num_selector_bounds

    def to_text(self) -> str:
        return "\n".join(
            [
                f"variables: {self.num_variables}",
                f"constraints: {self.num_constraints}",
                f"binaries: {self.num_binaries}",
                f"nonzeros: {self.num_nonzeros}",
                f"definitions: {self.num_definitions}",
                f"rows with selector bounds: {self.num_constraints_with_bounds}",
            ]
        )


class LinearRow(BaseModel):
    """A linear side constraint over the feature vector w, indexed by 0-based feature."""

    model_config = ConfigDict(frozen=True)

    coeffs: dict[int, float]
    sense: Sense
    rhs: float
    name: str | None = None

    def evaluate(self, w: list[float] | np.ndarray) -> bool:
        lhs = sum(coeff * w[i] for i, coeff in self.coeffs.items())
        if self.sense == Sense.LE:
            return lhs <= self.rhs
        if self.sense == Sense.GE:
            return lhs >= self.rhs

        return lhs == self.rhs
