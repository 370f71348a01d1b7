"""Chart-spec toolkit: prompt-driven chart editing, synthesis, replotting, evaluation."""
from __future__ import annotations

from .errors import ChartForgeError
from .spec import BarProps, ChartSpec, GlobalProps, LineProps, default_spec, parse_spec, serialize_spec
from .table import DataTable, Series, decode_table, encode_table

__version__ = "0.1.0"

__all__ = [
    "BarProps",
    "ChartForgeError",
    "ChartSpec",
    "DataTable",
    "GlobalProps",
    "LineProps",
    "Series",
    "__version__",
    "decode_table",
    "default_spec",
    "encode_table",
    "parse_spec",
    "serialize_spec",
]
