import pytest
from click.testing import CliRunner

from tree_mio.application.fixtures.cart import train_forest
from tree_mio.application.fixtures.paper import paper_fixture
from tree_mio.application.fixtures.synthetic import gen_triangle_data
from tree_mio.application.solver.config import SolverConfig
from tree_mio.application.trees.parsing import build_ensemble
from tree_mio.infrastructure.files_io import EnsembleFileManager


@pytest.fixture
def config() -> SolverConfig:
    return SolverConfig(feas_tol=1e-7, int_tol=1e-6, max_lp_iters=50_000, max_bnb_nodes=50_000)


@pytest.fixture
def ex1():
    return paper_fixture("ex1")


@pytest.fixture
def ex3():
    return paper_fixture("ex3")


@pytest.fixture
def ex4():
    return paper_fixture("ex4")


@pytest.fixture
def fig3a():
    return paper_fixture("fig3a")


@pytest.fixture
def fig3b():
    return paper_fixture("fig3b")


@pytest.fixture
def stump_payload() -> dict:
    return {
        "num_features": 1,
        "domain": [[0.0, 1.0]],
        "trees": [
            {
                "root": 0,
                "nodes": [
                    {"id": 0, "feature": 0, "threshold": 0.5, "left": 1, "right": 2},
                    {"id": 1, "value": 1.0},
                    {"id": 2, "value": 2.0},
                ],
            }
        ],
    }


@pytest.fixture
def stump(stump_payload):
    return build_ensemble(stump_payload)


@pytest.fixture
def two_feature_forest():
    """Two trees on two features sharing no threshold."""

    return build_ensemble(
        {
            "num_features": 2,
            "domain": [[0.0, 4.0], [0.0, 4.0]],
            "weights": [0.5, 0.5],
            "trees": [
                {
                    "root": 0,
                    "nodes": [
                        {"id": 0, "feature": 0, "threshold": 1.0, "left": 1, "right": 2},
                        {"id": 1, "value": 3.0},
                        {"id": 2, "feature": 1, "threshold": 2.0, "left": 3, "right": 4},
                        {"id": 3, "value": 1.0},
                        {"id": 4, "value": 5.0},
                    ],
                },
                {
                    "root": 0,
                    "nodes": [
                        {"id": 0, "feature": 1, "threshold": 3.0, "left": 1, "right": 2},
                        {"id": 1, "feature": 0, "threshold": 2.5, "left": 3, "right": 4},
                        {"id": 3, "value": 2.0},
                        {"id": 4, "value": 0.0},
                        {"id": 2, "value": 4.0},
                    ],
                },
            ],
        }
    )


@pytest.fixture(scope="session")
def generated_forests() -> list:
    """Labelled depth-3 forests on triangle data for d in 1..3, T in {1, 3} and two seeds."""

    forests = []
    for d in (1, 2, 3):
        for num_trees in (1, 3):
            for seed in (0, 1):
                data = gen_triangle_data(d, 40, noise=True, seed=seed)
                forests.append((f"d{d}-T{num_trees}-s{seed}", train_forest(data, num_trees, 3, seed=seed)))

    return forests


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def ensemble_file(tmp_path):
    def write(name: str) -> str:
        return str(EnsembleFileManager.write(tmp_path / f"{name}.json", paper_fixture(name).ensemble))

    return write
