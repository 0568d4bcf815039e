"""
Verification suites for the tightness properties of the formulations.

Each suite returns a VerificationReport; `run_suite` dispatches by name.
"""

from collections.abc import Callable

from loguru import logger

from tree_mio.application.analysis.containment import check_containment
from tree_mio.application.analysis.implication import check_implication_lemma2
from tree_mio.application.analysis.probes import probe_integrality
from tree_mio.application.analysis.sharpness import check_sharpness_1d
from tree_mio.application.analysis.tu import check_tu, expset_tu_matrix, ghouila_houri_coloring
from tree_mio.application.fixtures.cart import train_cart, train_forest
from tree_mio.application.fixtures.paper import build_fixture_model, get_available_fixtures, paper_fixture, resolve_point
from tree_mio.application.fixtures.synthetic import gen_triangle_data
from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.vertex import is_vertex
from tree_mio.application.trees.parsing import build_ensemble
from tree_mio.domain.results import CheckResult, VerificationReport
from tree_mio.domain.types import FormulationKind


def single_tree_ensemble(d: int, depth: int, seed: int, n_samples: int = 60):
    data = gen_triangle_data(d, n_samples, noise=True, seed=seed)
    tree = train_cart(data, depth)

    return build_ensemble(
        {"num_features": d, "domain": [[-1.0, 1.0]] * d, "trees": [tree.to_payload()]}
    )


def one_feature_forest(num_trees: int, depth: int, seed: int, n_samples: int = 40):
    data = gen_triangle_data(1, n_samples, noise=True, seed=seed)

    return train_forest(data, num_trees, depth, seed=seed)


def verify_ideal(seed: int, config: SolverConfig, n_objectives: int = 50) -> VerificationReport:
    checks = []
    for k in range(3):
        ensemble = single_tree_ensemble(d=2 + k, depth=3, seed=seed + k)
        report = probe_integrality(
            build_formulation(ensemble, FormulationKind.PROJECTED), ["z"], n_objectives, seed + k, config
        )
        checks.append(
            CheckResult(
                name=f"projected single tree #{k}",
                passed=report.all_integral,
                detail=f"{report.fractional_count} fractional of {report.n_objectives}",
            )
        )
    for k, num_trees in enumerate((2, 3, 4)):
        ensemble = one_feature_forest(num_trees, depth=3, seed=seed + k)
        for kind in (FormulationKind.EXPSET, FormulationKind.EXPSET_ELBOW):
            report = probe_integrality(build_formulation(ensemble, kind), ["x", "z"], n_objectives, seed + k, config)
            checks.append(
                CheckResult(
                    name=f"{kind.value} one-feature forest T={num_trees}",
                    passed=report.all_integral,
                    detail=f"{report.fractional_count} fractional of {report.n_objectives}",
                )
            )

    return VerificationReport(suite="ideal", checks=checks)


def verify_containment(seed: int, config: SolverConfig) -> VerificationReport:
    checks = []
    pairs = [
        ("fig3a", FormulationKind.EXPSET, FormulationKind.MISIC, True),
        ("fig3b", FormulationKind.EXPSET, FormulationKind.MISIC, True),
        ("fig3b", FormulationKind.ELBOW, FormulationKind.MISIC, True),
        ("fig3b", FormulationKind.EXPSET_ELBOW, FormulationKind.EXPSET, True),
        ("fig3a", FormulationKind.MISIC, FormulationKind.EXPSET, False),
    ]
    for name, inner, outer, expected in pairs:
        ensemble = paper_fixture(name).ensemble
        report = check_containment(build_formulation(ensemble, inner), build_formulation(ensemble, outer), config)
        checks.append(
            CheckResult(
                name=f"{name}: {inner.value} in {outer.value} is {expected}",
                passed=report.contained == expected,
                detail=f"max violation {report.max_violation:.3g}",
            )
        )

    for k in range(3):
        data = gen_triangle_data(2, 40, noise=True, seed=seed + k)
        ensemble = train_forest(data, 2, 3, seed=seed + k)
        misic = build_formulation(ensemble, FormulationKind.MISIC)
        for inner in (FormulationKind.EXPSET, FormulationKind.ELBOW):
            report = check_containment(build_formulation(ensemble, inner), misic, config)
            checks.append(
                CheckResult(name=f"random #{k}: {inner.value} in misic", passed=report.contained)
            )

    return VerificationReport(suite="containment", checks=checks)


def verify_tu(seed: int, config: SolverConfig) -> VerificationReport:
    checks = []
    for k, num_trees in enumerate((2, 3, 3)):
        ensemble = one_feature_forest(num_trees, depth=1, seed=seed + k, n_samples=12)
        tu = expset_tu_matrix(ensemble)
        order = min(9, *tu.matrix.shape)
        _, signed = ghouila_houri_coloring(tu)
        checks.append(
            CheckResult(
                name=f"expset matrix T={num_trees} ({tu.matrix.shape[0]}x{tu.matrix.shape[1]})",
                passed=check_tu(tu.matrix, order) and signed,
                detail=f"orders up to {order}",
            )
        )

    return VerificationReport(suite="tu", checks=checks)


def verify_sharp(seed: int, config: SolverConfig) -> VerificationReport:
    ensemble = paper_fixture("ex3").ensemble
    outside = check_sharpness_1d(ensemble, (1.0, 3.25), config=config)
    inside = check_sharpness_1d(ensemble, (2.5, 3.5), config=config)

    return VerificationReport(
        suite="sharp",
        checks=[
            CheckResult(
                name="(1, 3.25) in relaxation but not in hull",
                passed=outside.in_projection and not outside.in_hull,
            ),
            CheckResult(name="(2.5, 3.5) in both", passed=inside.in_projection and inside.in_hull),
        ],
    )


def verify_lemma2(seed: int, config: SolverConfig) -> VerificationReport:
    implied = check_implication_lemma2(paper_fixture("elbow_segment").ensemble, (0, 1), (0, 0), config=config)
    not_implied = check_implication_lemma2(paper_fixture("fig3b").ensemble, (0, 4), (0, 2), config=config)

    return VerificationReport(
        suite="lemma2",
        checks=[
            CheckResult(
                name="one-feature nested splits: elbow row implied",
                passed=implied.covering and implied.implied,
                detail=f"violation {implied.max_violation:.3g}",
            ),
            CheckResult(
                name="fig3b: elbow row not implied",
                passed=not not_implied.covering and not_implied.max_violation > 1e-4,
                detail=f"violation {not_implied.max_violation:.3g}",
            ),
        ],
    )


def verify_examples(seed: int, config: SolverConfig) -> VerificationReport:
    checks = []
    for name in get_available_fixtures():
        fixture = paper_fixture(name)
        for k, reference in enumerate(fixture.reference_points):
            model = build_fixture_model(fixture, reference.kind)
            point = resolve_point(model, reference.values)
            checks.append(
                CheckResult(
                    name=f"{name} #{k}: vertex of {reference.kind.value}",
                    passed=is_vertex(model, point, config),
                    detail=reference.note,
                )
            )

    return VerificationReport(suite="examples", checks=checks)


SUITES: dict[str, Callable[[int, SolverConfig], VerificationReport]] = {
    "ideal": verify_ideal,
    "containment": verify_containment,
    "tu": verify_tu,
    "sharp": verify_sharp,
    "lemma2": verify_lemma2,
    "examples": verify_examples,
}


def run_suite(name: str, seed: int = 0, config: SolverConfig | None = None) -> VerificationReport:
    config = config or SolverConfig.from_settings()
    if name not in SUITES:
        raise KeyError(f"Unknown suite '{name}'. Available: {', '.join(SUITES)}")

    logger.info("=" * 70)
    logger.info(f"🔎 Verification suite: {name}")
    logger.info("=" * 70)
    report = SUITES[name](seed, config)
    logger.info(f"{'✅' if report.passed else '❌'} {name}: {sum(c.passed for c in report.checks)}/{len(report.checks)}")

    return report
