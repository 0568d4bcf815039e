from fractions import Fraction

from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.mip.core import relax
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import solve_lp
from tree_mio.application.solver.vertex import enumerate_vertices
from tree_mio.application.trees.parsing import evaluate
from tree_mio.application.trees.split_index import build_split_index
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import DimensionError, UnsupportedFormulation
from tree_mio.domain.models import MipModel
from tree_mio.domain.results import SharpnessReport
from tree_mio.domain.types import FEATURE_FAMILY, FormulationKind, ObjectiveSense

Point = tuple[Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def graph_breakpoints(ensemble: TreeEnsemble) -> list[Point]:
    """(cell endpoint, value) pairs of the piecewise-constant graph of a one-feature ensemble."""

    if ensemble.num_features != 1:
        raise DimensionError("The graph hull is computed for one-feature ensembles.")

    lb, ub = ensemble.domain[0]
    cuts = [lb, *build_split_index(ensemble).thresholds[0], ub]
    points: list[Point] = []
    for a, b in zip(cuts, cuts[1:]):
        value = Fraction(evaluate(ensemble, [(a + b) / 2.0]))
        points.extend([(Fraction(a), value), (Fraction(b), value)])

    return points


def convex_hull(points: list[Point]) -> list[Point]:
    """Monotone chain hull in counter-clockwise order, collinear points dropped."""

    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)

    return lower[:-1] + upper[:-1]


def in_convex_hull(hull: list[Point], point: Point) -> bool:
    if len(hull) == 1:
        return point == hull[0]
    if len(hull) == 2 or all(_cross(hull[0], hull[1], p) == 0 for p in hull[2:]):
        a, b = hull[0], hull[-1]
        if _cross(a, b, point) != 0:
            return False
        return min(a, b) <= point <= max(a, b)

    return all(_cross(hull[i], hull[(i + 1) % len(hull)], point) >= 0 for i in range(len(hull)))


def _w_model(ensemble: TreeEnsemble, kind: FormulationKind) -> MipModel:
    if ensemble.num_features != 1:
        raise DimensionError("Sharpness is checked for one-feature ensembles.")
    if FormulationKind(kind) not in FEATURE_FAMILY:
        raise UnsupportedFormulation(f"{kind} has no w variable to project onto.")

    return relax(build_formulation(ensemble, kind))


def check_sharpness_1d(
    ensemble: TreeEnsemble,
    point: tuple[float, float],
    kind: FormulationKind = FormulationKind.PROJECTED,
    config: SolverConfig | None = None,
) -> SharpnessReport:
    """
    Compares membership of (w, y) in the projection of a relaxation and in the exact convex hull of the graph.

    Raises:
        DimensionError: If the ensemble has more than one feature.
        UnsupportedFormulation: If the formulation has no w variable.
    """

    config = config or SolverConfig.from_settings()
    model = _w_model(ensemble, kind)
    w0, y0 = point
    w_id, y_id = model.role("w", 0), model.role("y")
    variables = list(model.variables)
    variables[w_id] = variables[w_id].model_copy(update={"lower": w0, "upper": w0})
    variables[y_id] = variables[y_id].model_copy(update={"lower": y0, "upper": y0})
    fixed = model.model_copy(update={"variables": variables}, deep=True)
    fixed.set_objective([], ObjectiveSense.MAXIMIZE)
    in_projection = solve_lp(fixed, config).is_optimal

    hull = convex_hull(graph_breakpoints(ensemble))
    in_hull = in_convex_hull(hull, (Fraction(w0), Fraction(y0)))

    return SharpnessReport(point=(w0, y0), in_projection=in_projection, in_hull=in_hull)


def projected_vertices_outside_hull(
    ensemble: TreeEnsemble,
    kind: FormulationKind = FormulationKind.PROJECTED,
    config: SolverConfig | None = None,
    max_vars: int = 12,
) -> list[tuple[float, float]]:
    """(w, y) projections of relaxation vertices that fall outside the convex hull of the graph."""

    model = _w_model(ensemble, kind)
    w_name = model.variables[model.role("w", 0)].name
    y_name = model.variables[model.role("y")].name
    hull = convex_hull(graph_breakpoints(ensemble))

    outside: set[tuple[float, float]] = set()
    for vertex in enumerate_vertices(model, config, max_vars=max_vars):
        w, y = round(vertex[w_name], 9), round(vertex[y_name], 9)
        if not in_convex_hull(hull, (Fraction(w).limit_denominator(10**6), Fraction(y).limit_denominator(10**6))):
            outside.add((w, y))

    return sorted(outside)
