import itertools

import pytest

from tree_mio.application.analysis import oracle as oracle_module
from tree_mio.application.analysis.oracle import oracle_optimum
from tree_mio.application.fixtures.cart import train_forest
from tree_mio.application.fixtures.paper import paper_fixture
from tree_mio.application.fixtures.synthetic import gen_triangle_data
from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.solver.branch_and_bound import solve_mip
from tree_mio.application.trees.parsing import evaluate
from tree_mio.domain.exceptions import AnalysisError, CellLimit
from tree_mio.domain.models import LinearRow
from tree_mio.domain.types import BINARY_SPLIT_FAMILY, FormulationKind, ObjectiveSense, Sense


def _semantics(kind: FormulationKind) -> str:
    return "open" if kind in BINARY_SPLIT_FAMILY else "closed"


@pytest.mark.parametrize(("name", "expected"), [("ex1", 3.0), ("ex3", 3.5), ("fig3a", 4.0), ("fig3b", 4.0)])
def test_fixture_optima(name, expected, config):
    result = oracle_optimum(paper_fixture(name).ensemble, config=config)

    assert result.value == pytest.approx(expected)
    assert evaluate(paper_fixture(name).ensemble, result.w) == pytest.approx(expected)


def test_minimize(ex3, config):
    assert oracle_optimum(ex3.ensemble, sense=ObjectiveSense.MINIMIZE, config=config).value == pytest.approx(1.5)


def test_side_constraints(ex4, config):
    result = oracle_optimum(ex4.ensemble, ex4.side_constraints, config=config)

    assert result.value == pytest.approx(3.0)
    assert result.w[0] + result.w[1] <= 3.0 + 1e-7
    assert result.w[0] > 2.0


def test_open_side_needs_interior_point(ex1, config):
    # w = 5 lies in (2, 5] and not in (5, 10]
    at_least_five = LinearRow(coeffs={0: 1.0}, sense=Sense.GE, rhs=5.0)
    at_most_five = LinearRow(coeffs={0: 1.0}, sense=Sense.LE, rhs=5.0)

    assert oracle_optimum(ex1.ensemble, [at_least_five, at_most_five], config=config).value == pytest.approx(2.0)


def test_infeasible_side_constraints(ex1, config):
    with pytest.raises(AnalysisError):
        oracle_optimum(ex1.ensemble, [LinearRow(coeffs={0: 1.0}, sense=Sense.GE, rhs=20.0)], config=config)


def test_cell_limit(ex3, monkeypatch):
    monkeypatch.setattr(oracle_module, "MAX_CELLS", 2)

    with pytest.raises(CellLimit):
        oracle_optimum(ex3.ensemble)


def test_closed_cells_on_shared_thresholds(config):
    ensemble = paper_fixture("misic_gap").ensemble

    assert oracle_optimum(ensemble, semantics="open", config=config).value == pytest.approx(10.0 / 3.0)
    closed = oracle_optimum(ensemble, semantics="closed", config=config)
    assert closed.value == pytest.approx(20.0 / 3.0)
    assert closed.w == pytest.approx([2.0])


def test_semantics_agree_without_shared_thresholds(two_feature_forest, config):
    open_value = oracle_optimum(two_feature_forest, semantics="open", config=config).value
    closed_value = oracle_optimum(two_feature_forest, semantics="closed", config=config).value

    assert open_value == pytest.approx(4.5)
    assert closed_value == pytest.approx(open_value)


@pytest.mark.parametrize("kind", list(FormulationKind))
@pytest.mark.parametrize("name", ["ex1", "ex3", "fig3a", "fig3b", "misic_gap"])
def test_formulations_match_the_oracle_on_fixtures(name, kind, config):
    ensemble = paper_fixture(name).ensemble

    expected = oracle_optimum(ensemble, semantics=_semantics(kind), config=config).value

    assert solve_mip(build_formulation(ensemble, kind), config).objective == pytest.approx(expected)


@pytest.mark.parametrize("kind", list(FormulationKind))
def test_formulations_match_the_oracle_without_shared_thresholds(two_feature_forest, kind, config):
    assert solve_mip(build_formulation(two_feature_forest, kind), config).objective == pytest.approx(4.5)


def _random_instances(ds, Ts, seeds, depth):
    for d, T, seed in itertools.product(ds, Ts, seeds):
        data = gen_triangle_data(d, 40, noise=True, seed=seed)
        yield f"d{d}-T{T}-s{seed}", train_forest(data, T, depth, seed=seed)


@pytest.mark.parametrize("kind", list(FormulationKind))
def test_formulations_match_the_oracle_on_small_forests(kind, config):
    for label, ensemble in _random_instances([1, 2], [1, 2], [0, 1], depth=2):
        expected = oracle_optimum(ensemble, semantics=_semantics(kind), config=config).value
        result = solve_mip(build_formulation(ensemble, kind), config)
        assert result.objective == pytest.approx(expected, abs=1e-6), label


@pytest.mark.slow
@pytest.mark.parametrize("kind", list(FormulationKind))
def test_formulations_match_the_oracle_on_forests(kind, config):
    for label, ensemble in _random_instances([1, 2, 3], [1, 2, 4], range(20), depth=4):
        expected = oracle_optimum(ensemble, semantics=_semantics(kind), config=config).value
        result = solve_mip(build_formulation(ensemble, kind), config)
        assert result.objective == pytest.approx(expected, abs=1e-6), label
