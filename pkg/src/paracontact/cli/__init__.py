"""Definition files, command dispatch and reports."""

from .fileformat import Loaded, ManifoldFileError, dumps, load, loads, same_model, soliton_data
from .main import build_parser, main, run
from .report import ReportDocument, emit

__all__ = ["Loaded", "ManifoldFileError", "ReportDocument", "build_parser", "dumps", "emit",
           "load", "loads", "main", "run", "same_model", "soliton_data"]
