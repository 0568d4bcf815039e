"""
Dense two-phase tableau simplex with Bland's rule.

Variables are mapped to nonnegative columns: finite lower bounds are shifted out, upper-only bounds are
mirrored, free variables are split, fixed variables are substituted and finite upper bounds become rows.
"""

from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from tree_mio.domain.exceptions import IterationLimit
from tree_mio.domain.models import DenseForm, MipModel
from tree_mio.domain.results import SolveResult
from tree_mio.domain.types import Sense, SolveStatus

from .config import SolverConfig

PIVOT_TOL = 1e-9
COST_TOL = 1e-9


@dataclass
class LpOutcome:
    status: SolveStatus
    x: np.ndarray | None = None
    # Objective of the maximization form (c negated for minimization problems).
    value: float | None = None
    basis: list[str] = field(default_factory=list)
    iterations: int = 0


@dataclass
class _StandardForm:
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    labels: list[str]
    # per column: (original variable, sign)
    columns: list[tuple[int, float]]
    offset: np.ndarray
    constant: float


def _standardize(form: DenseForm, lower: np.ndarray, upper: np.ndarray, sign: float) -> _StandardForm | None:
    n = len(form.names)
    offset = np.zeros(n)
    columns: list[tuple[int, float]] = []
    labels: list[str] = []
    bound_rows: list[tuple[int, float]] = []

    for j in range(n):
        lo, up = lower[j], upper[j]
        if lo > up:
            return None
        finite_lo, finite_up = np.isfinite(lo), np.isfinite(up)
        if finite_lo and finite_up and up - lo <= 1e-12:
            offset[j] = lo
        elif finite_lo:
            offset[j] = lo
            columns.append((j, 1.0))
            labels.append(form.names[j])
            if finite_up:
                bound_rows.append((len(columns) - 1, up - lo))
        elif finite_up:
            offset[j] = up
            columns.append((j, -1.0))
            labels.append(f"{form.names[j]}_mirror")
        else:
            columns.append((j, 1.0))
            labels.append(f"{form.names[j]}_pos")
            columns.append((j, -1.0))
            labels.append(f"{form.names[j]}_neg")

    c_max = sign * form.c
    num_cols = len(columns)
    structural = np.zeros((form.A.shape[0], num_cols))
    c = np.zeros(num_cols)
    for k, (j, s) in enumerate(columns):
        structural[:, k] = s * form.A[:, j]
        c[k] = s * c_max[j]
    rhs = form.b - form.A @ offset

    senses = list(form.senses)
    rows = [structural]
    rhs_parts = [rhs]
    if bound_rows:
        extra = np.zeros((len(bound_rows), num_cols))
        for r, (k, bound) in enumerate(bound_rows):
            extra[r, k] = 1.0
        rows.append(extra)
        rhs_parts.append(np.array([bound for _, bound in bound_rows]))
        senses.extend([Sense.LE] * len(bound_rows))

    A = np.vstack(rows) if num_cols else np.zeros((sum(len(part) for part in rhs_parts), 0))
    b = np.concatenate(rhs_parts) if rhs_parts else np.zeros(0)

    # Slack columns turn every inequality into an equality.
    slack_cols = []
    for r, sense in enumerate(senses):
        if sense == Sense.EQ:
            continue
        column = np.zeros(len(senses))
        column[r] = 1.0 if sense == Sense.LE else -1.0
        slack_cols.append(column)
        labels.append(f"slack_{r}")
    if slack_cols:
        A = np.hstack([A, np.column_stack(slack_cols)])
        c = np.concatenate([c, np.zeros(len(slack_cols))])

    return _StandardForm(
        A=A, b=b, c=c, labels=labels, columns=columns, offset=offset, constant=float(c_max @ offset)
    )


class DenseSimplex:
    def __init__(self, config: SolverConfig):
        self.config = config
        self.iterations = 0

    def _pivot(self, T: np.ndarray, basis: list[int], r: int, j: int) -> None:
        T[r] /= T[r, j]
        column = T[:, j].copy()
        column[r] = 0.0
        T -= np.outer(column, T[r])
        basis[r - 1] = j
        self.iterations += 1

    def _price(self, T: np.ndarray, basis: list[int], costs: np.ndarray) -> None:
        T[0, :-1] = 0.0
        T[0, : len(costs)] = costs
        T[0, -1] = 0.0
        for i, var in enumerate(basis):
            if T[0, var] != 0.0:
                T[0] -= T[0, var] * T[i + 1]

    def _run(self, T: np.ndarray, basis: list[int], num_cols: int) -> SolveStatus:
        while True:
            if self.iterations >= self.config.max_lp_iters:
                return SolveStatus.ITERATION_LIMIT

            entering = np.flatnonzero(T[0, :num_cols] > COST_TOL)
            if entering.size == 0:
                return SolveStatus.OPTIMAL
            j = int(entering[0])

            column = T[1:, j]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                return SolveStatus.UNBOUNDED
            ratios = T[1:, -1][rows] / column[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            r = int(min(tied, key=lambda i: basis[i])) + 1

            self._pivot(T, basis, r, j)

    def solve(self, form: DenseForm, lower: np.ndarray, upper: np.ndarray) -> LpOutcome:
        sign = 1.0 if form.maximize else -1.0
        std = _standardize(form, lower, upper, sign)
        if std is None:
            return LpOutcome(status=SolveStatus.INFEASIBLE)

        A, b = std.A.copy(), std.b.copy()
        negative = b < 0
        A[negative] *= -1.0
        b[negative] *= -1.0
        m, n = A.shape

        basis: list[int] = []
        artificial_rows = []
        for r in range(m):
            slack = next((k for k in range(len(std.columns), n) if A[r, k] == 1.0), None)
            if slack is not None:
                basis.append(slack)
            else:
                basis.append(n + len(artificial_rows))
                artificial_rows.append(r)

        num_art = len(artificial_rows)
        T = np.zeros((m + 1, n + num_art + 1))
        T[1:, :n] = A
        T[1:, -1] = b
        for k, r in enumerate(artificial_rows):
            T[r + 1, n + k] = 1.0

        self.iterations = 0
        if num_art:
            phase_one = np.concatenate([np.zeros(n), -np.ones(num_art)])
            self._price(T, basis, phase_one)
            status = self._run(T, basis, n + num_art)
            if status == SolveStatus.ITERATION_LIMIT:
                return LpOutcome(status=status, iterations=self.iterations)
            if -T[0, -1] < -self.config.feas_tol * max(1.0, float(np.abs(b).max(initial=0.0))):
                return LpOutcome(status=SolveStatus.INFEASIBLE, iterations=self.iterations)

            redundant = []
            for i, var in enumerate(basis):
                if var < n:
                    continue
                candidates = np.flatnonzero(np.abs(T[i + 1, :n]) > PIVOT_TOL)
                if candidates.size:
                    self._pivot(T, basis, i + 1, int(candidates[0]))
                else:
                    redundant.append(i)
            keep_rows = [0] + [i + 1 for i in range(m) if i not in redundant]
            T = T[keep_rows][:, list(range(n)) + [n + num_art]]
            basis = [var for i, var in enumerate(basis) if i not in redundant]

        self._price(T, basis, std.c)
        status = self._run(T, basis, n)
        if status != SolveStatus.OPTIMAL:
            return LpOutcome(status=status, iterations=self.iterations)

        x_std = np.zeros(n)
        for i, var in enumerate(basis):
            x_std[var] = T[i + 1, -1]
        x = std.offset.copy()
        for k, (j, s) in enumerate(std.columns):
            x[j] += s * x_std[k]

        return LpOutcome(
            status=SolveStatus.OPTIMAL,
            x=x,
            value=float(sign * form.c @ x),
            basis=[std.labels[var] for var in sorted(basis)],
            iterations=self.iterations,
        )


def solve_dense(form: DenseForm, lower: np.ndarray, upper: np.ndarray, config: SolverConfig) -> LpOutcome:
    return DenseSimplex(config).solve(form, lower, upper)


def solve_lp(model: MipModel, config: SolverConfig | None = None) -> SolveResult:
    """
    Solves the model with integrality ignored.

    Raises:
        IterationLimit: If the pivot budget runs out and config.raise_on_limit is set.
    """

    config = config or SolverConfig.from_settings()
    form = model.to_dense()
    outcome = solve_dense(form, form.lower, form.upper, config)
    logger.debug(f"LP '{model.name}': {outcome.status} after {outcome.iterations} pivots.")

    if outcome.status == SolveStatus.ITERATION_LIMIT and config.raise_on_limit:
        raise IterationLimit(f"LP '{model.name}' hit {config.max_lp_iters} pivots.")
    if outcome.status != SolveStatus.OPTIMAL:
        return SolveResult(status=outcome.status, iterations=outcome.iterations)

    objective = outcome.value if form.maximize else -outcome.value

    return SolveResult(
        status=SolveStatus.OPTIMAL,
        objective=objective,
        values=dict(zip(form.names, map(float, outcome.x))),
        basis=outcome.basis,
        iterations=outcome.iterations,
        best_bound=objective,
        gap=0.0,
    )
