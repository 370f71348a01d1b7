"""Data tables and their wire-string codec.

In memory a table's rows are the data series. The wire string used inside spec
JSON lays the same table out the other way around (series run along columns);
the spec layer transposes on parse/serialize, the codec here is literal.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DuplicateSeries, EmptyTable, RaggedRow, SchemaViolation

CELL_SEP = " | "
ROW_SEP = " <0x0A> "
_ROW_TOKEN = "<0x0A>"


def format_number(x: float) -> str:
    """Shortest decimal that round-trips; integral floats drop the point."""
    if x != x or x in (float("inf"), float("-inf")):
        raise SchemaViolation("underlying_data", f"non-finite value {x!r}")
    if float(x).is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _check_cell(text: str, what: str) -> str:
    if not isinstance(text, str) or not text:
        raise SchemaViolation("underlying_data", f"empty {what}")
    if CELL_SEP in text or _ROW_TOKEN in text:
        raise SchemaViolation("underlying_data", f"{what} contains a reserved separator: {text!r}")
    return text


@dataclass(frozen=True)
class Series:
    name: str
    values: tuple[float | None, ...]

    def __post_init__(self):
        _check_cell(self.name, "series name")
        vals = []
        for v in self.values:
            if v is None:
                vals.append(None)
            elif isinstance(v, bool) or not isinstance(v, (int, float)):
                raise SchemaViolation("underlying_data", f"non-numeric cell {v!r}")
            else:
                vals.append(float(v))
        object.__setattr__(self, "values", tuple(vals))


@dataclass(frozen=True)
class DataTable:
    series_axis_title: str
    column_headers: tuple[str, ...]
    rows: tuple[Series, ...]

    def __post_init__(self):
        object.__setattr__(self, "column_headers", tuple(self.column_headers))
        object.__setattr__(self, "rows", tuple(self.rows))
        if not isinstance(self.series_axis_title, str):
            raise SchemaViolation("underlying_data", "series axis title must be text")
        if CELL_SEP in self.series_axis_title or _ROW_TOKEN in self.series_axis_title:
            raise SchemaViolation("underlying_data", "series axis title contains a reserved separator")
        if not self.rows or not self.column_headers:
            raise EmptyTable("table needs at least one row and one column")
        for h in self.column_headers:
            _check_cell(h, "column header")
        if len(set(self.column_headers)) != len(self.column_headers):
            raise DuplicateSeries("duplicate column header")
        names = [s.name for s in self.rows]
        if len(set(names)) != len(names):
            raise DuplicateSeries("duplicate series name")
        width = len(self.column_headers)
        for s in self.rows:
            if len(s.values) != width:
                raise RaggedRow(f"series {s.name!r} has {len(s.values)} cells, expected {width}")

    @property
    def n_series(self) -> int:
        return len(self.rows)

    @property
    def n_columns(self) -> int:
        return len(self.column_headers)

    @property
    def series_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.rows)

    def series_index(self, name: str) -> int:
        for i, s in enumerate(self.rows):
            if s.name == name:
                return i
        raise KeyError(name)

    def transposed(self) -> "DataTable":
        """Swap rows and columns; the axis title stays put."""
        rows = tuple(
            Series(header, tuple(s.values[j] for s in self.rows))
            for j, header in enumerate(self.column_headers)
        )
        return DataTable(self.series_axis_title, self.series_names, rows)


def encode_table(table: DataTable) -> str:
    """Header row first, every row followed by the row separator."""
    lines = [CELL_SEP.join([table.series_axis_title, *table.column_headers])]
    for s in table.rows:
        cells = [s.name] + ["" if v is None else format_number(v) for v in s.values]
        lines.append(CELL_SEP.join(cells))
    return "".join(line + ROW_SEP for line in lines)


def decode_table(text: str) -> DataTable:
    if not isinstance(text, str):
        raise SchemaViolation("underlying_data", "table must be encoded as text")
    body = text
    # canonical form carries a trailing row separator; tolerate its absence
    if body.endswith(ROW_SEP):
        body = body[: -len(ROW_SEP)]
    elif body.endswith(" " + _ROW_TOKEN):
        body = body[: -len(_ROW_TOKEN) - 1]
    lines = body.split(ROW_SEP)
    if len(lines) < 2:
        raise EmptyTable("table needs a header row and at least one data row")
    header = lines[0].split(CELL_SEP)
    if len(header) < 2:
        raise EmptyTable("table needs at least one column")
    rows = []
    for line in lines[1:]:
        cells = line.split(CELL_SEP)
        if len(cells) != len(header):
            raise RaggedRow(f"row {cells[0]!r} has {len(cells)} cells, expected {len(header)}")
        values: list[float | None] = []
        for cell in cells[1:]:
            if cell == "":
                values.append(None)
                continue
            try:
                values.append(float(cell))
            except ValueError:
                raise SchemaViolation("underlying_data", f"not a number: {cell!r}") from None
        rows.append(Series(cells[0], tuple(values)))
    return DataTable(header[0], tuple(header[1:]), tuple(rows))
