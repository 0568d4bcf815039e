from .files_io import CsvRowSink, EnsembleFileManager, JsonFileManager, LpFileManager

__all__ = ["CsvRowSink", "EnsembleFileManager", "JsonFileManager", "LpFileManager"]
