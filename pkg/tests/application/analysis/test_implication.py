import pytest

from tree_mio.application.analysis.implication import check_implication_lemma2
from tree_mio.application.fixtures.paper import paper_fixture
from tree_mio.domain.exceptions import NotNested


def test_covered_pair_implies_the_elbow_row(config):
    report = check_implication_lemma2(paper_fixture("elbow_segment").ensemble, (0, 1), (0, 0), config=config)

    assert report.relation == "right_parent"
    assert report.covering
    assert report.implied
    assert report.max_violation == pytest.approx(0.0, abs=1e-7)


def test_uncovered_pair_leaves_the_elbow_row_violated(fig3b, config):
    report = check_implication_lemma2(fig3b.ensemble, (0, 4), (0, 2), config=config)

    assert report.relation == "left_parent"
    assert not report.covering
    assert not report
    assert report.max_violation == pytest.approx(0.5)


def test_pair_must_be_nested(ex1, ex3, config):
    with pytest.raises(NotNested):
        check_implication_lemma2(ex1.ensemble, (0, 0), (0, 1), config=config)
    with pytest.raises(NotNested):
        check_implication_lemma2(ex3.ensemble, (0, 0), (1, 0), config=config)
