import math
import re
from dataclasses import dataclass

import numpy as np

from tree_mio.domain.exceptions import ModelError
from tree_mio.domain.models import MipModel, Row, check_name
from tree_mio.domain.types import ObjectiveSense, Sense

SECTIONS = {
    "maximize": "objective",
    "minimize": "objective",
    "subject to": "constraints",
    "bounds": "bounds",
    "binaries": "binaries",
    "binary": "binaries",
    "end": "end",
}
TERM_PATTERN = re.compile(r"([+-])\s*([0-9.eE+-]+|inf)\s+([A-Za-z_][A-Za-z0-9_]*)")


def _format_number(value: float) -> str:
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"

    return format(value, ".17g")


def _format_row(model: MipModel, row: Row) -> str:
    if not row:
        return f"0 {model.variables[0].name}"

    parts = []
    for var_id, coeff in row:
        sign = "-" if coeff < 0 else "+"
        parts.append(f"{sign} {_format_number(abs(coeff))} {model.variables[var_id].name}")

    return " ".join(parts)


def write_lp(model: MipModel) -> str:
    """
    Renders the model in CPLEX LP text format, with coefficients printed to 17 significant digits.

    Raises:
        ModelNameError: If a variable or constraint name cannot be written.
    """

    check_name(model.name)
    for variable in model.variables:
        check_name(variable.name)
    for constraint in model.constraints:
        check_name(constraint.name)

    lines = [f"\\ {model.name}"]
    lines.append("Maximize" if model.objective.sense == ObjectiveSense.MAXIMIZE else "Minimize")
    lines.append(f" obj: {_format_row(model, model.objective.row)}")
    lines.append("Subject To")
    for constraint in model.constraints:
        lines.append(
            f" {constraint.name}: {_format_row(model, constraint.row)} {constraint.sense.value} "
            f"{_format_number(constraint.rhs)}"
        )

    lines.append("Bounds")
    binaries = []
    for variable in model.variables:
        if variable.is_binary:
            binaries.append(variable.name)
            lines.append(f" 0 <= {variable.name} <= 1")
        elif math.isinf(variable.lower) and math.isinf(variable.upper):
            lines.append(f" {variable.name} free")
        else:
            lines.append(
                f" {_format_number(variable.lower)} <= {variable.name} <= {_format_number(variable.upper)}"
            )

    if binaries:
        lines.append("Binaries")
        lines.extend(f" {name}" for name in binaries)
    lines.append("End")

    return "\n".join(lines) + "\n"


@dataclass
class LpData:
    names: list[str]
    c: np.ndarray
    A: np.ndarray
    senses: list[Sense]
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    binary: np.ndarray
    maximize: bool


def _parse_terms(text: str) -> list[tuple[str, float]]:
    text = text.strip()
    if not text.startswith(("+", "-")):
        text = "+ " + text

    terms = []
    for sign, coeff, name in TERM_PATTERN.findall(text):
        value = float(coeff)
        terms.append((name, -value if sign == "-" else value))

    return terms


def _parse_bound(token: str) -> float:
    return float(token.replace("+inf", "inf"))


def read_lp(text: str) -> LpData:
    """Parses LP text produced by write_lp back into dense arrays."""

    section = None
    maximize = True
    objective: list[tuple[str, float]] = []
    rows: list[tuple[list[tuple[str, float]], Sense, float]] = []
    bounds: dict[str, tuple[float, float]] = {}
    binaries: list[str] = []
    order: list[str] = []
    declared: list[str] = []

    def remember(name: str) -> None:
        if name not in order:
            order.append(name)

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        lowered = line.lower()
        if lowered in SECTIONS:
            section = SECTIONS[lowered]
            if section == "objective":
                maximize = lowered == "maximize"
            continue

        if section == "objective":
            _, body = line.split(":", 1)
            objective = _parse_terms(body)
            for name, _ in objective:
                remember(name)
        elif section == "constraints":
            _, body = line.split(":", 1)
            match = re.match(r"(.*)\s(<=|>=|=)\s(\S+)$", body)
            if match is None:
                raise ModelError(f"Cannot parse constraint line '{line}'.")
            terms = _parse_terms(match.group(1))
            for name, _ in terms:
                remember(name)
            rows.append((terms, Sense(match.group(2)), _parse_bound(match.group(3))))
        elif section == "bounds":
            tokens = line.split()
            if len(tokens) == 2 and tokens[1] == "free":
                declared.append(tokens[0])
                bounds[tokens[0]] = (-math.inf, math.inf)
            elif len(tokens) == 5:
                declared.append(tokens[2])
                bounds[tokens[2]] = (_parse_bound(tokens[0]), _parse_bound(tokens[4]))
            else:
                raise ModelError(f"Cannot parse bound line '{line}'.")
        elif section == "binaries":
            remember(line)
            binaries.append(line)

    # Bounds list every variable in model order.
    names = declared + [name for name in order if name not in bounds]
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    A = np.zeros((len(rows), n))
    for r, (terms, _, _) in enumerate(rows):
        for name, coeff in terms:
            A[r, index[name]] += coeff
    c = np.zeros(n)
    for name, coeff in objective:
        c[index[name]] += coeff

    lower = np.zeros(n)
    upper = np.full(n, math.inf)
    for name, (lb, ub) in bounds.items():
        lower[index[name]], upper[index[name]] = lb, ub
    binary = np.zeros(n, dtype=bool)
    for name in binaries:
        binary[index[name]] = True
        lower[index[name]], upper[index[name]] = 0.0, 1.0

    return LpData(
        names=names,
        c=c,
        A=A,
        senses=[sense for _, sense, _ in rows],
        b=np.array([rhs for _, _, rhs in rows], dtype=float),
        lower=lower,
        upper=upper,
        binary=binary,
        maximize=maximize,
    )
