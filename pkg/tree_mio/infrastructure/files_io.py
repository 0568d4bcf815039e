import json
from pathlib import Path
from threading import Lock

import pandas as pd

from tree_mio.application.mip.lp_format import write_lp
from tree_mio.application.trees.parsing import build_ensemble
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import SchemaError
from tree_mio.domain.models import MipModel


class JsonFileManager:
    @classmethod
    def read(cls, filename: str | Path) -> dict | list:
        file_path: Path = Path(filename)

        try:
            with file_path.open("r") as file:
                return json.load(file)
        except FileNotFoundError:
            raise FileNotFoundError(f"File '{file_path=}' does not exist.") from None
        except json.JSONDecodeError as e:
            raise SchemaError(f"File '{file_path=}' is not properly formatted as JSON: {e.msg}") from None

    @classmethod
    def write(cls, filename: str | Path, data: list | dict) -> Path:
        file_path = Path(filename).resolve().absolute()
        file_path.parent.mkdir(parents=True, exist_ok=True)

        with file_path.open("w") as file:
            json.dump(data, file, indent=4)

        return file_path


class EnsembleFileManager:
    @classmethod
    def read(cls, filename: str | Path) -> TreeEnsemble:
        payload = JsonFileManager.read(filename)
        if not isinstance(payload, dict):
            raise SchemaError(f"File '{filename}' must hold a JSON object.")

        return build_ensemble(payload)

    @classmethod
    def write(cls, filename: str | Path, ensemble: TreeEnsemble) -> Path:
        return JsonFileManager.write(filename, ensemble.to_payload())


class LpFileManager:
    @classmethod
    def write(cls, filename: str | Path, model: MipModel) -> Path:
        file_path = Path(filename).resolve().absolute()
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(write_lp(model))

        return file_path


class CsvRowSink:
    """Appends rows to a CSV file; writers from several threads are serialized by a lock."""

    def __init__(self, filename: str | Path, columns: list[str]):
        self.file_path = Path(filename).resolve().absolute()
        self.columns = columns
        self._lock = Lock()
        self._header_written = False
        self.file_path.parent.mkdir(parents=True, exist_ok=True)

    def write_rows(self, rows: list[dict]) -> None:
        if not rows:
            return

        frame = pd.DataFrame(rows, columns=self.columns)
        with self._lock:
            frame.to_csv(
                self.file_path,
                mode="a" if self._header_written else "w",
                header=not self._header_written,
                index=False,
            )
            self._header_written = True
