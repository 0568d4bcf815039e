import pytest

from tree_mio.application.solver import branch_and_bound
from tree_mio.application.solver.branch_and_bound import solve_mip
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.solver.simplex import LpOutcome, solve_dense
from tree_mio.domain.exceptions import IterationLimit, NodeLimit, TimeLimit
from tree_mio.domain.models import MipModel
from tree_mio.domain.types import Integrality, ObjectiveSense, Sense, SolveStatus


def _knapsack() -> MipModel:
    model = MipModel(name="knapsack")
    a, b, c = (model.add_variable(name, 0.0, 1.0, Integrality.BINARY) for name in ("a", "b", "c"))
    model.add_constraint("r1", [(a, 2.0), (b, 3.0), (c, 1.0)], Sense.LE, 5.0)
    model.add_constraint("r2", [(a, 4.0), (b, 1.0), (c, 2.0)], Sense.LE, 11.0)
    model.add_constraint("r3", [(a, 3.0), (b, 4.0), (c, 2.0)], Sense.LE, 8.0)
    model.set_objective([(a, 5.0), (b, 4.0), (c, 3.0)], ObjectiveSense.MAXIMIZE)

    return model


def _half() -> MipModel:
    model = MipModel(name="half")
    a, b = (model.add_variable(name, 0.0, 1.0, Integrality.BINARY) for name in ("a", "b"))
    model.add_constraint("cap", [(a, 2.0), (b, 2.0)], Sense.LE, 3.0)
    model.set_objective([(a, 1.0), (b, 1.0)], ObjectiveSense.MAXIMIZE)

    return model


def test_knapsack(config):
    result = solve_mip(_knapsack(), config)

    assert result.status == SolveStatus.OPTIMAL
    assert result.objective == pytest.approx(9.0)
    assert (result.values["a"], result.values["b"], result.values["c"]) == pytest.approx((1.0, 1.0, 0.0))
    assert result.gap == 0.0


def test_branching_on_fractional_root(config):
    result = solve_mip(_half(), config)

    assert result.objective == pytest.approx(1.0)
    assert result.nodes > 1


def test_minimization(config):
    model = MipModel(name="cover")
    a, b = (model.add_variable(name, 0.0, 1.0, Integrality.BINARY) for name in ("a", "b"))
    model.add_constraint("need", [(a, 2.0), (b, 2.0)], Sense.GE, 1.0)
    model.set_objective([(a, 3.0), (b, 2.0)], ObjectiveSense.MINIMIZE)

    result = solve_mip(model, config)

    assert result.objective == pytest.approx(2.0)
    assert result.values["b"] == pytest.approx(1.0)


def test_infeasible_integrality(config):
    model = MipModel(name="gap")
    a = model.add_variable("a", 0.0, 1.0, Integrality.BINARY)
    model.add_constraint("lo", [(a, 1.0)], Sense.GE, 0.4)
    model.add_constraint("hi", [(a, 1.0)], Sense.LE, 0.6)

    assert solve_mip(model, config).status == SolveStatus.INFEASIBLE


def test_node_limit():
    result = solve_mip(_half(), SolverConfig(max_bnb_nodes=1))

    assert result.status == SolveStatus.NODE_LIMIT
    assert result.objective is None
    assert result.best_bound == pytest.approx(1.5)
    with pytest.raises(NodeLimit):
        solve_mip(_half(), SolverConfig(max_bnb_nodes=1, raise_on_limit=True))


def test_time_limit():
    result = solve_mip(_half(), SolverConfig(time_limit_s=1e-9))

    assert result.status == SolveStatus.TIME_LIMIT
    with pytest.raises(TimeLimit):
        solve_mip(_half(), SolverConfig(time_limit_s=1e-9, raise_on_limit=True))


def _stall_after(calls: int):
    seen = {"count": 0}

    def stalling(form, lower, upper, config):
        seen["count"] += 1
        if seen["count"] > calls:
            return LpOutcome(status=SolveStatus.ITERATION_LIMIT)

        return solve_dense(form, lower, upper, config)

    return stalling


def test_child_iteration_limit_keeps_parent_bound(monkeypatch, config):
    monkeypatch.setattr(branch_and_bound, "solve_dense", _stall_after(1))

    result = solve_mip(_half(), config)

    assert result.status == SolveStatus.ITERATION_LIMIT
    assert result.objective is None
    assert result.best_bound == pytest.approx(1.5)


def test_child_iteration_limit_raises_on_request(monkeypatch):
    monkeypatch.setattr(branch_and_bound, "solve_dense", _stall_after(1))

    with pytest.raises(IterationLimit):
        solve_mip(_half(), SolverConfig(raise_on_limit=True))
