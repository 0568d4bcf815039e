"""
Small hand-checkable ensembles with known fractional vertices.

Reference points are keyed by role (see role_key) so they can be resolved against any model built from
the fixture's ensemble.
"""

from pydantic import BaseModel, ConfigDict

from tree_mio.application.formulations.constraints import attach_constraints
from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.solver.vertex import complete_point
from tree_mio.application.trees.parsing import build_ensemble
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import UnknownFixture
from tree_mio.domain.models import LinearRow, MipModel
from tree_mio.domain.types import FormulationKind, Sense


class ReferencePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: FormulationKind
    values: dict[str, float]
    note: str = ""


class PaperFixture(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    ensemble: TreeEnsemble
    side_constraints: list[LinearRow] = []
    reference_points: list[ReferencePoint] = []
    optimum: float | None = None
    big_m: float | None = None


def _split(node_id: int, feature: int, threshold: float, left: int, right: int) -> dict:
    return {"id": node_id, "feature": feature, "threshold": threshold, "left": left, "right": right}


def _leaf(node_id: int, value: float) -> dict:
    return {"id": node_id, "value": value}


# root w <= 5, left child w <= 2; leaves [0, 2], (2, 5], (5, 10]
NESTED_1D_TREE = {
    "root": 0,
    "nodes": [_split(0, 0, 5.0, 1, 2), _split(1, 0, 2.0, 3, 4), _leaf(3, 1.0), _leaf(4, 2.0), _leaf(2, 3.0)],
}


def _nested_1d() -> TreeEnsemble:
    return build_ensemble({"num_features": 1, "domain": [[0.0, 10.0]], "trees": [NESTED_1D_TREE]})


def _ex1() -> PaperFixture:
    return PaperFixture(
        name="ex1",
        ensemble=_nested_1d(),
        reference_points=[
            ReferencePoint(
                kind=FormulationKind.MISIC,
                values={"z:0:0": 0.0, "z:0:1": 0.5, "z:0:2": 0.5, "x:0:0": 0.5, "x:0:1": 0.5},
                note="fractional vertex of the misic relaxation",
            )
        ],
        optimum=3.0,
    )


def _ex2() -> PaperFixture:
    return PaperFixture(
        name="ex2",
        ensemble=_nested_1d(),
        big_m=15.0,
        reference_points=[
            ReferencePoint(
                kind=FormulationKind.BIGM,
                values={
                    "w:0": 0.0,
                    "arc:0:0:L": 1 / 3,
                    "arc:0:0:R": 2 / 3,
                    "arc:0:1:L": 1 / 3,
                    "arc:0:1:R": 0.0,
                },
                note="fractional vertex of the big-M relaxation with M = 15",
            )
        ],
        optimum=3.0,
    )


def _ex3() -> PaperFixture:
    ensemble = build_ensemble(
        {
            "num_features": 1,
            "domain": [[0.0, 3.0]],
            "weights": [0.5, 0.5],
            "trees": [
                {"root": 0, "nodes": [_split(0, 0, 1.0, 1, 2), _leaf(1, 1.0), _leaf(2, 4.0)]},
                {"root": 0, "nodes": [_split(0, 0, 2.0, 1, 2), _leaf(1, 2.0), _leaf(2, 3.0)]},
            ],
        }
    )

    return PaperFixture(
        name="ex3",
        ensemble=ensemble,
        reference_points=[
            ReferencePoint(
                kind=FormulationKind.PROJECTED,
                values={"w:0": 1.0, "z:0:0": 0.0, "z:0:1": 1.0, "z:1:0": 0.5, "z:1:1": 0.5},
                note="vertex with (w, y) = (1, 3.25) outside the convex hull of the graph",
            )
        ],
        optimum=3.5,
    )


def _ex4() -> PaperFixture:
    ensemble = build_ensemble(
        {
            "num_features": 2,
            "domain": [[0.0, 3.0], [0.0, 3.0]],
            "trees": [
                {
                    "root": 0,
                    "nodes": [
                        _split(0, 0, 2.0, 1, 2),
                        _split(1, 1, 2.0, 3, 4),
                        _leaf(3, 1.0),
                        _leaf(4, 2.0),
                        _leaf(2, 3.0),
                    ],
                }
            ],
        }
    )

    return PaperFixture(
        name="ex4",
        ensemble=ensemble,
        side_constraints=[LinearRow(coeffs={0: 1.0, 1: 1.0}, sense=Sense.LE, rhs=3.0, name="budget")],
        reference_points=[
            ReferencePoint(
                kind=FormulationKind.PROJECTED,
                values={"w:0": 2 / 3, "w:1": 7 / 3, "z:0:0": 2 / 3, "z:0:1": 0.0, "z:0:2": 1 / 3},
                note="fractional vertex once w1 + w2 <= 3 is attached",
            )
        ],
        optimum=3.0,
    )


def _fig3a() -> PaperFixture:
    ensemble = build_ensemble(
        {
            "num_features": 2,
            "domain": [[0.0, 10.0], [0.0, 10.0]],
            "trees": [
                {
                    "root": 0,
                    "nodes": [
                        _split(0, 0, 5.0, 1, 2),
                        _split(1, 1, 2.0, 3, 4),
                        _split(2, 1, 5.0, 5, 6),
                        _leaf(3, 1.0),
                        _leaf(4, 2.0),
                        _leaf(5, 3.0),
                        _leaf(6, 4.0),
                    ],
                }
            ],
        }
    )
    x = {"x:0:0": 0.5, "x:1:0": 0.5, "x:1:1": 0.5}

    return PaperFixture(
        name="fig3a",
        ensemble=ensemble,
        reference_points=[
            ReferencePoint(
                kind=FormulationKind.MISIC,
                values={**x, "z:0:0": 0.0, "z:0:1": 0.5, "z:0:2": 0.0, "z:0:3": 0.5},
                note="misic vertex cut off by the expset row of w2 <= 2",
            ),
            ReferencePoint(
                kind=FormulationKind.MISIC,
                values={**x, "z:0:0": 0.5, "z:0:1": 0.0, "z:0:2": 0.5, "z:0:3": 0.0},
                note="misic vertex cut off by the expset row of w2 <= 5",
            ),
        ],
        optimum=4.0,
    )


def _fig3b() -> PaperFixture:
    ensemble = build_ensemble(
        {
            "num_features": 2,
            "domain": [[0.0, 10.0], [0.0, 10.0]],
            "trees": [
                {
                    "root": 0,
                    "nodes": [
                        _split(0, 0, 5.0, 1, 2),
                        _leaf(1, 1.0),
                        _split(2, 1, 2.0, 3, 4),
                        _leaf(3, 2.0),
                        _split(4, 1, 4.0, 5, 6),
                        _leaf(5, 3.0),
                        _leaf(6, 4.0),
                    ],
                }
            ],
        }
    )

    return PaperFixture(
        name="fig3b",
        ensemble=ensemble,
        reference_points=[
            ReferencePoint(
                kind=FormulationKind.EXPSET,
                values={"x:0:0": 0.5, "x:1:0": 0.5, "x:1:1": 0.5, "z:0:0": 0.5, "z:0:1": 0.0, "z:0:2": 0.5, "z:0:3": 0.0},
                note="expset vertex cut off by the elbow row z3 <= x22 - x21",
            )
        ],
        optimum=4.0,
    )


def _elbow_segment() -> PaperFixture:
    return PaperFixture(
        name="elbow_segment",
        ensemble=_nested_1d(),
        reference_points=[
            ReferencePoint(
                kind=FormulationKind.MISIC,
                values={"z:0:0": 0.0, "z:0:1": 0.5, "z:0:2": 0.5, "x:0:0": 0.5, "x:0:1": 0.5},
                note="puts weight on the middle leaf while x(5) - x(2) = 0",
            )
        ],
        optimum=3.0,
    )


def _misic_gap() -> PaperFixture:
    """
    The nested tree plus one stump at each of its thresholds; misic's relaxation overestimates the optimum.

    The trees share thresholds, so under closed leaf boxes the w-based formulations reach 20/3 at w = 2.
    """

    ensemble = build_ensemble(
        {
            "num_features": 1,
            "domain": [[0.0, 10.0]],
            "trees": [
                {
                    "root": 0,
                    "nodes": [_split(0, 0, 5.0, 1, 2), _split(1, 0, 2.0, 3, 4), _leaf(3, 0.0), _leaf(4, 10.0), _leaf(2, 0.0)],
                },
                {"root": 0, "nodes": [_split(0, 0, 2.0, 1, 2), _leaf(1, 10.0), _leaf(2, 0.0)]},
                {"root": 0, "nodes": [_split(0, 0, 5.0, 1, 2), _leaf(1, 0.0), _leaf(2, 10.0)]},
            ],
        }
    )

    return PaperFixture(name="misic_gap", ensemble=ensemble, optimum=10.0 / 3.0)


FIXTURE_REGISTRY = {
    "ex1": _ex1,
    "ex2": _ex2,
    "ex3": _ex3,
    "ex4": _ex4,
    "fig3a": _fig3a,
    "fig3b": _fig3b,
    "elbow_segment": _elbow_segment,
    "misic_gap": _misic_gap,
}


def get_available_fixtures() -> list[str]:
    return list(FIXTURE_REGISTRY)


def paper_fixture(name: str) -> PaperFixture:
    try:
        factory = FIXTURE_REGISTRY[name]
    except KeyError as e:
        raise UnknownFixture(f"Unknown fixture '{name}'. Available: {', '.join(FIXTURE_REGISTRY)}") from e

    return factory()


def resolve_point(model: MipModel, values: dict[str, float]) -> dict[str, float]:
    """Maps role-keyed values to variable names and completes the outputs from the definition rows."""

    partial = {model.variables[model.roles[key]].name: value for key, value in values.items() if key in model.roles}

    return complete_point(model, partial)


def build_fixture_model(fixture: PaperFixture, kind: FormulationKind | str) -> MipModel:
    """Builds a formulation of the fixture's ensemble with its side constraints and big-M attached."""

    model = build_formulation(fixture.ensemble, kind, big_m=fixture.big_m)
    if fixture.side_constraints and model.role_ids("w"):
        model = attach_constraints(model, fixture.side_constraints)

    return model
