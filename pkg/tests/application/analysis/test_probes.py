import pytest

from pipelines.verify import one_feature_forest, single_tree_ensemble
from tree_mio.application.analysis.probes import probe_integrality
from tree_mio.application.fixtures.paper import paper_fixture
from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.domain.types import FormulationKind


def test_projected_single_tree_is_integral(fig3a, config):
    report = probe_integrality(build_formulation(fig3a.ensemble, FormulationKind.PROJECTED), ["z"], 40, 0, config)

    assert report.all_integral
    assert report.checked_roles == ["z"]


def test_expset_one_feature_is_integral(config):
    model = build_formulation(paper_fixture("misic_gap").ensemble, FormulationKind.EXPSET)

    assert probe_integrality(model, ["x", "z"], 60, 1, config).all_integral


def test_misic_has_fractional_vertices(config):
    model = build_formulation(paper_fixture("misic_gap").ensemble, FormulationKind.MISIC)

    report = probe_integrality(model, n_objectives=200, seed=0, config=config)

    assert report.fractional_count > 0
    assert report.max_distance > 0.1
    assert set(report.checked_roles) == {"x", "z"}


@pytest.mark.slow
@pytest.mark.parametrize("k", range(10))
def test_projected_random_single_trees_are_integral(k, config):
    ensemble = single_tree_ensemble(d=1 + k % 5, depth=4, seed=k)

    report = probe_integrality(build_formulation(ensemble, FormulationKind.PROJECTED), ["z"], 200, k, config)

    assert report.all_integral, f"{report.fractional_count} fractional, max distance {report.max_distance}"


@pytest.mark.slow
@pytest.mark.parametrize("k", range(10))
def test_expset_random_one_feature_forests_are_integral(k, config):
    ensemble = one_feature_forest(1 + k % 5, depth=3, seed=k)

    report = probe_integrality(build_formulation(ensemble, FormulationKind.EXPSET), ["x", "z"], 200, k, config)

    assert report.all_integral, f"{report.fractional_count} fractional, max distance {report.max_distance}"
