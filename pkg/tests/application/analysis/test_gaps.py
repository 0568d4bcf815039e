import pytest

from tree_mio.application.analysis import gaps
from tree_mio.application.analysis.gaps import gap_percent, relaxation_gap
from tree_mio.application.fixtures.paper import paper_fixture
from tree_mio.domain.exceptions import SolverError
from tree_mio.domain.results import SolveResult
from tree_mio.domain.types import FormulationKind, SolveStatus


@pytest.mark.parametrize(
    ("lp", "mip", "expected"),
    [(5.0, 10.0 / 3.0, 50.0), (3.0, 3.0, 0.0), (2.0, 3.0, -100.0 / 3.0), (1.0, 2.0, -50.0)],
)
def test_gap_percent(lp, mip, expected):
    assert gap_percent(lp, mip) == pytest.approx(expected)


def test_gap_near_zero_optimum_uses_floor():
    assert gap_percent(1e-12, 0.0) == pytest.approx(100.0 * 1e-12 / 1e-9)


def test_relaxation_gap_with_side_constraints(ex4, config):
    report = relaxation_gap(ex4.ensemble, FormulationKind.PROJECTED, config, side_constraints=ex4.side_constraints)

    assert report.mip_status == SolveStatus.OPTIMAL
    assert report.mip_opt == pytest.approx(3.0)
    assert report.gap_percent >= -gaps.GAP_TOL


def test_relaxation_gap_rejects_bound_below_optimum(monkeypatch, config):
    ensemble = paper_fixture("misic_gap").ensemble
    monkeypatch.setattr(gaps, "solve_lp", lambda model, cfg: SolveResult(status=SolveStatus.OPTIMAL, objective=1.0))

    with pytest.raises(SolverError, match="below the MIP optimum"):
        relaxation_gap(ensemble, FormulationKind.PROJECTED, config)


def test_bigm_gap_grows_with_m(config):
    ensemble = paper_fixture("misic_gap").ensemble
    tight = relaxation_gap(ensemble, FormulationKind.BIGM, config)
    loose = relaxation_gap(ensemble, FormulationKind.BIGM, config, big_m=100.0)

    assert loose.lp_bound >= tight.lp_bound - 1e-9
    assert loose.mip_opt == pytest.approx(tight.mip_opt)
