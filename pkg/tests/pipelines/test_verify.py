import pytest

from pipelines.verify import SUITES, one_feature_forest, run_suite, single_tree_ensemble


@pytest.mark.parametrize("name", ["examples", "lemma2", "sharp", "tu", "containment"])
def test_suite_passes(name, config):
    report = run_suite(name, seed=0, config=config)

    assert report.suite == name
    assert report.checks
    assert report.passed, report.to_text()


@pytest.mark.slow
def test_ideal_suite_passes(config):
    report = run_suite("ideal", seed=0, config=config)

    assert report.passed, report.to_text()


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("everything")


def test_suite_names():
    assert set(SUITES) == {"ideal", "containment", "tu", "sharp", "lemma2", "examples"}


def test_instance_helpers():
    assert single_tree_ensemble(2, 2, seed=0).num_trees == 1
    forest = one_feature_forest(3, 1, seed=0)
    assert forest.num_trees == 3
    assert forest.num_features == 1
