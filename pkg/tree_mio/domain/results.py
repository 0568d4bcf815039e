from pydantic import BaseModel, ConfigDict, Field

from tree_mio.domain.types import FormulationKind, SolveStatus


class Diagnostic(BaseModel):
    code: str
    message: str
    tree: int | None = None
    node: int | None = None

    def to_text(self) -> str:
        location = ""
        if self.tree is not None:
            location = f" [tree {self.tree}" + (f", node {self.node}]" if self.node is not None else "]")

        return f"{self.code}{location}: {self.message}"


class ValidationReport(BaseModel):
    diagnostics: list[Diagnostic] = []

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def codes(self) -> list[str]:
        return [diagnostic.code for diagnostic in self.diagnostics]

    def to_text(self) -> str:
        if self.ok:
            return "ensemble is valid"

        return "\n".join(diagnostic.to_text() for diagnostic in self.diagnostics)


class SolveResult(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    status: SolveStatus
    objective: float | None = None
    values: dict[str, float] = {}
    basis: list[str] = []
    iterations: int = 0
    nodes: int = 0
    best_bound: float | None = None
    gap: float | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL

    def to_text(self) -> str:
        lines = [f"status: {self.status}"]
        if self.objective is not None:
            lines.append(f"objective: {self.objective:.10g}")
        if self.best_bound is not None and self.nodes:
            lines.append(f"best_bound: {self.best_bound:.10g}")
            lines.append(f"nodes: {self.nodes}")

        return "\n".join(lines)


class OracleResult(BaseModel):
    w: list[float]
    value: float
    cells_checked: int
    semantics: str = "open"


class GapReport(BaseModel):
    kind: FormulationKind
    lp_bound: float
    mip_opt: float
    gap_percent: float
    mip_status: SolveStatus


class ConstraintViolation(BaseModel):
    name: str
    max_violation: float


class ContainmentReport(BaseModel):
    inner: str
    outer: str
    violations: list[ConstraintViolation] = []
    max_violation: float = 0.0
    contained: bool = True

    def to_text(self) -> str:
        verdict = "contained" if self.contained else "not contained"
        lines = [f"{self.inner} in {self.outer}: {verdict} (max violation {self.max_violation:.3g})"]
        lines.extend(f"  {v.name}: {v.max_violation:.3g}" for v in self.violations)

        return "\n".join(lines)


class ProbeReport(BaseModel):
    model_name: str
    n_objectives: int
    fractional_count: int
    max_distance: float
    checked_roles: list[str]

    @property
    def all_integral(self) -> bool:
        return self.fractional_count == 0


class ImplicationReport(BaseModel):
    split: tuple[int, int]
    parent: tuple[int, int]
    relation: str
    covering: bool
    max_violation: float
    implied: bool

    def __bool__(self) -> bool:
        return self.implied


class SharpnessReport(BaseModel):
    point: tuple[float, float]
    in_projection: bool
    in_hull: bool

    @property
    def sharp_at_point(self) -> bool:
        return self.in_projection == self.in_hull


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    suite: str
    checks: list[CheckResult] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for check in self.checks:
            mark = "ok  " if check.passed else "FAIL"
            lines.append(f"  [{mark}] {check.name}" + (f" ({check.detail})" if check.detail else ""))

        return "\n".join(lines)


class BenchRow(BaseModel):
    """One (instance, formulation) measurement; the field order is the CSV column order."""

    seed: int
    d: int
    T: int
    depth: int
    formulation: FormulationKind
    build_ms: float = Field(ge=0)
    solve_ms: float = Field(ge=0)
    status: str
    mip_obj: float | None
    lp_bound: float | None
    gap_percent: float | None
    nodes: int
