import pandas as pd
import pytest

from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.domain.exceptions import SchemaError
from tree_mio.domain.types import FormulationKind
from tree_mio.infrastructure.files_io import CsvRowSink, EnsembleFileManager, JsonFileManager, LpFileManager


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        JsonFileManager.read(tmp_path / "missing.json")


def test_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")

    with pytest.raises(SchemaError):
        JsonFileManager.read(path)


def test_ensemble_round_trip(tmp_path, ex3):
    path = EnsembleFileManager.write(tmp_path / "nested" / "ex3.json", ex3.ensemble)

    assert path.exists()
    assert EnsembleFileManager.read(path) == ex3.ensemble


def test_ensemble_file_must_hold_an_object(tmp_path):
    path = JsonFileManager.write(tmp_path / "list.json", [1, 2])

    with pytest.raises(SchemaError):
        EnsembleFileManager.read(path)


def test_lp_file(tmp_path, ex1):
    path = LpFileManager.write(tmp_path / "ex1.lp", build_formulation(ex1.ensemble, FormulationKind.PROJECTED))

    assert path.read_text().startswith("\\ projected\nMaximize\n")


def test_csv_sink_writes_one_header(tmp_path):
    sink = CsvRowSink(tmp_path / "rows.csv", ["a", "b"])
    sink.write_rows([{"a": 1, "b": 2}])
    sink.write_rows([])
    sink.write_rows([{"a": 3, "b": 4}, {"a": 5, "b": 6}])

    frame = pd.read_csv(tmp_path / "rows.csv")

    assert list(frame.columns) == ["a", "b"]
    assert frame["a"].tolist() == [1, 3, 5]
