import pandas as pd

from tools.treemio import cli


def test_gen_fixture_and_build(runner, tmp_path):
    ensemble = tmp_path / "ex3.json"
    result = runner.invoke(cli, ["gen", "fixture", "ex3", "-o", str(ensemble)])
    assert result.exit_code == 0, result.output
    assert ensemble.exists()

    lp = tmp_path / "ex3.lp"
    result = runner.invoke(cli, ["build", str(ensemble), "--kind", "projected", "-o", str(lp)])

    assert result.exit_code == 0, result.output
    assert "constraints: 6" in result.output
    assert lp.read_text().startswith("\\ projected")


def test_solve_with_side_constraint(runner, ensemble_file):
    result = runner.invoke(cli, ["solve", ensemble_file("ex4"), "--kind", "projected", "--constraint", "w1+w2<=3"])

    assert result.exit_code == 0, result.output
    assert "status: optimal" in result.output
    assert "objective: 3" in result.output
    assert "w1: " in result.output


def test_solve_relaxation_and_minimize(runner, ensemble_file):
    path = ensemble_file("ex3")

    relaxed = runner.invoke(cli, ["solve", path, "--kind", "misic", "--relax"])
    assert relaxed.exit_code == 0, relaxed.output
    assert "objective: 3.5" in relaxed.output

    minimized = runner.invoke(cli, ["solve", path, "--kind", "facet", "--minimize"])
    assert minimized.exit_code == 0, minimized.output
    assert "objective: 1.5" in minimized.output


def test_side_constraints_need_w(runner, ensemble_file):
    result = runner.invoke(cli, ["solve", ensemble_file("ex1"), "--kind", "misic", "--constraint", "w1<=3"])

    assert result.exit_code == 3


def test_bad_inputs_exit_with_two(runner, ensemble_file, tmp_path):
    missing = runner.invoke(cli, ["solve", str(tmp_path / "missing.json")])
    assert missing.exit_code == 2

    broken = tmp_path / "broken.json"
    broken.write_text('{"num_features": 1, "domain": [[0, 1]], "trees": []}')
    invalid = runner.invoke(cli, ["build", str(broken), "--kind", "misic", "-o", str(tmp_path / "x.lp")])
    assert invalid.exit_code == 2

    bad_row = runner.invoke(cli, ["solve", ensemble_file("ex1"), "--constraint", "w1 <= three"])
    assert bad_row.exit_code == 2


def test_verify(runner):
    result = runner.invoke(cli, ["verify", "lemma2"])

    assert result.exit_code == 0, result.output
    assert "suite lemma2: PASS" in result.output


def test_bench_to_csv(runner, tmp_path):
    out = tmp_path / "bench.csv"
    result = runner.invoke(
        cli,
        [
            "--log-level",
            "ERROR",
            "bench",
            "--d",
            "1",
            "--T",
            "1,2",
            "--seeds",
            "1",
            "--depth",
            "2",
            "--n-samples",
            "20",
            "--kinds",
            "misic,projected",
            "-o",
            str(out),
            "--summary",
            "--gnuplot",
            str(tmp_path / "bench.dat"),
        ],
    )

    assert result.exit_code == 0, result.output
    frame = pd.read_csv(out)
    assert len(frame) == 4
    assert set(frame["formulation"]) == {"misic", "projected"}
    assert (tmp_path / "bench.dat").exists()


def test_bench_rejects_unknown_kind(runner):
    result = runner.invoke(cli, ["bench", "--kinds", "hull"])

    assert result.exit_code == 2


def test_gen_forest(runner, tmp_path):
    out = tmp_path / "forest.json"
    result = runner.invoke(
        cli, ["gen", "forest", "--d", "2", "--T", "2", "--depth", "2", "--n-samples", "30", "-o", str(out)]
    )

    assert result.exit_code == 0, result.output
    solved = runner.invoke(cli, ["solve", str(out), "--kind", "expset"])
    assert solved.exit_code == 0, solved.output
