"""Chart specification model, canonical JSON serialization, strict and repairing parsers.

Wire format notes:
- the JSON table string lays series along columns; in memory rows are series,
  so parse transposes after decoding and serialize transposes back.
- key order, 4-space indent and LF endings are part of the canonical form.
- `data_table` is accepted as an input alias for `underlying_data`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from . import pool
from .errors import DuplicateSeries, EmptyTable, MalformedJson, PoolViolation, RaggedRow, SchemaViolation
from .jsonrepair import repair_json
from .table import DataTable, Series, decode_table, encode_table

LINE = "line"
GROUPED_BAR = "grouped_vertical_bar"
STACKED_BAR = "stacked_vertical_bar"

# repair defaults: first pool value for enumerated keys unless noted
DEFAULT_FONT_NAME = pool.FONT_NAMES[0]
DEFAULT_FONT_SIZE = pool.FONT_SIZES[0]
DEFAULT_TICK_SIZE = pool.TICK_LABEL_SIZES[0]
DEFAULT_LEGEND_LOC = 1
DEFAULT_LEGEND_NCOL = 1
DEFAULT_GRID_VISIBLE = False


def _int_if_integral(x):
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


@dataclass(frozen=True)
class FontParams:
    fontname: str
    fontsize: str


@dataclass(frozen=True)
class LegendParams:
    loc: int
    ncol: int


@dataclass(frozen=True)
class TitleParams:
    fontname: str
    fontsize: str
    rotation: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rotation", _int_if_integral(self.rotation))


@dataclass(frozen=True)
class TickParams:
    axis: str
    which: str
    rotation: int
    labelsize: str
    labelfontfamily: str

    def __post_init__(self):
        object.__setattr__(self, "rotation", _int_if_integral(self.rotation))


@dataclass(frozen=True)
class GridParams:
    visible: bool
    axis: str
    linestyle: str


@dataclass(frozen=True)
class GlobalProps:
    chart_type: str
    x_label_params: FontParams
    y_label_params: FontParams
    legend_params: LegendParams
    chart_title_params: TitleParams
    x_tick_params: TickParams
    y_tick_params: TickParams
    grid_params: GridParams


@dataclass(frozen=True)
class LineProps:
    linestyles: tuple[str, ...]
    markers: tuple[str, ...]
    colors: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "linestyles", tuple(self.linestyles))
        object.__setattr__(self, "markers", tuple(self.markers))
        object.__setattr__(self, "colors", tuple(self.colors))


@dataclass(frozen=True)
class BarProps:
    hatches: tuple[str, ...]
    colors: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "hatches", tuple(self.hatches))
        object.__setattr__(self, "colors", tuple(self.colors))


@dataclass(frozen=True)
class ChartSpec:
    underlying_data: DataTable
    chart_title: str
    x_axis_title: str
    y_axis_title: str
    global_props: GlobalProps
    series_props: LineProps | BarProps
    repair_log: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "repair_log", tuple(self.repair_log))
        validate_spec(self)

    @property
    def chart_type(self) -> str:
        return self.global_props.chart_type

    @property
    def is_bar(self) -> bool:
        return self.chart_type in pool.BAR_TYPES

    @property
    def n_series(self) -> int:
        return self.underlying_data.n_series


def _check_pool(scope: str, key: str, value, path: str):
    if not pool.in_pool(scope, key, value):
        raise PoolViolation(path, value)


def validate_spec(spec: ChartSpec) -> None:
    """Raise on any enumerated value outside the pool or structural mismatch."""
    g = spec.global_props
    if g.chart_type not in pool.CHART_TYPES:
        raise SchemaViolation("global_properties.chart_type", f"unknown chart type {g.chart_type!r}")
    for title, path in (
        (spec.chart_title, "chart_title"),
        (spec.x_axis_title, "x_axis_title"),
        (spec.y_axis_title, "y_axis_title"),
    ):
        if not isinstance(title, str):
            raise SchemaViolation(path, "must be text")
    base = "global_properties."
    _check_pool("global", "x_label_fontname", g.x_label_params.fontname, base + "x_label_params.fontname")
    _check_pool("global", "x_label_fontsize", g.x_label_params.fontsize, base + "x_label_params.fontsize")
    _check_pool("global", "y_label_fontname", g.y_label_params.fontname, base + "y_label_params.fontname")
    _check_pool("global", "y_label_fontsize", g.y_label_params.fontsize, base + "y_label_params.fontsize")
    _check_pool("global", "legend_loc", g.legend_params.loc, base + "legend_params.loc")
    _check_pool("global", "legend_ncol", g.legend_params.ncol, base + "legend_params.ncol")
    _check_pool("global", "title_fontname", g.chart_title_params.fontname, base + "chart_title_params.fontname")
    _check_pool("global", "title_fontsize", g.chart_title_params.fontsize, base + "chart_title_params.fontsize")
    if g.chart_title_params.rotation not in pool.TICK_ROTATIONS:
        raise SchemaViolation(base + "chart_title_params.rotation", "rotation must be 0 or 45")
    for name, params, want_axis in (("x_tick_params", g.x_tick_params, "x"), ("y_tick_params", g.y_tick_params, "y")):
        p = base + name
        if params.axis != want_axis:
            raise SchemaViolation(p + ".axis", f"must be {want_axis!r}")
        if params.which != "major":
            raise SchemaViolation(p + ".which", "must be 'major'")
        if params.rotation not in pool.TICK_ROTATIONS:
            raise SchemaViolation(p + ".rotation", "rotation must be 0 or 45")
        _check_pool("global", "x_tick_labelsize", params.labelsize, p + ".labelsize")
        if params.labelfontfamily not in pool.FONT_NAMES:
            raise PoolViolation(p + ".labelfontfamily", params.labelfontfamily)
    if not isinstance(g.grid_params.visible, bool):
        raise SchemaViolation(base + "grid_params.visible", "must be true or false")
    _check_pool("global", "grid_axis", g.grid_params.axis, base + "grid_params.axis")
    _check_pool("global", "grid_linestyle", g.grid_params.linestyle, base + "grid_params.linestyle")

    n = spec.underlying_data.n_series
    if g.chart_type == LINE:
        if not isinstance(spec.series_props, LineProps):
            raise SchemaViolation("line_properties", "line charts need line properties")
        props = {"linestyles": ("linestyle", spec.series_props.linestyles),
                 "markers": ("marker", spec.series_props.markers),
                 "colors": ("color", spec.series_props.colors)}
        scope = "line"
        branch = "line_properties"
    else:
        if not isinstance(spec.series_props, BarProps):
            raise SchemaViolation("bar_properties", "bar charts need bar properties")
        props = {"hatches": ("hatch", spec.series_props.hatches),
                 "colors": ("color", spec.series_props.colors)}
        scope = "bar"
        branch = "bar_properties"
    for json_key, (pool_key, values) in props.items():
        if len(values) != n:
            raise SchemaViolation(f"{branch}.{json_key}", f"{len(values)} entries for {n} series")
        for i, v in enumerate(values):
            _check_pool(scope, pool_key, v, f"{branch}.{json_key}[{i}]")


def default_table() -> DataTable:
    return DataTable("x", ("col_0",), (Series("series_0", (0.0,)),))


def default_spec(chart_type: str = LINE, table: DataTable | None = None) -> ChartSpec:
    """Minimal valid spec built from repair defaults."""
    t = table if table is not None else default_table()
    return ChartSpec(
        underlying_data=t,
        chart_title="",
        x_axis_title="",
        y_axis_title="",
        global_props=GlobalProps(
            chart_type=chart_type,
            x_label_params=FontParams(DEFAULT_FONT_NAME, DEFAULT_FONT_SIZE),
            y_label_params=FontParams(DEFAULT_FONT_NAME, DEFAULT_FONT_SIZE),
            legend_params=LegendParams(DEFAULT_LEGEND_LOC, DEFAULT_LEGEND_NCOL),
            chart_title_params=TitleParams(DEFAULT_FONT_NAME, DEFAULT_FONT_SIZE, 0),
            x_tick_params=TickParams("x", "major", 0, DEFAULT_TICK_SIZE, DEFAULT_FONT_NAME),
            y_tick_params=TickParams("y", "major", 0, DEFAULT_TICK_SIZE, DEFAULT_FONT_NAME),
            grid_params=GridParams(DEFAULT_GRID_VISIBLE, pool.GRID_AXES[0], pool.GRID_LINESTYLES[0]),
        ),
        series_props=_default_series_props(chart_type, t.n_series),
    )


def _default_series_props(chart_type: str, n: int) -> LineProps | BarProps:
    colors = tuple(pool.COLORS[i % len(pool.COLORS)] for i in range(n))
    if chart_type == LINE:
        return LineProps(("solid",) * n, ("o",) * n, colors)
    return BarProps(tuple(pool.HATCHES[i % len(pool.HATCHES)] for i in range(n)), colors)


# serialization

def _spec_to_obj(spec: ChartSpec) -> dict:
    g = spec.global_props
    obj: dict = {
        "underlying_data": encode_table(spec.underlying_data.transposed()),
        "chart_title": spec.chart_title,
        "x_axis_title": spec.x_axis_title,
        "y_axis_title": spec.y_axis_title,
        "global_properties": {
            "chart_type": g.chart_type,
            "x_label_params": {"fontname": g.x_label_params.fontname, "fontsize": g.x_label_params.fontsize},
            "y_label_params": {"fontname": g.y_label_params.fontname, "fontsize": g.y_label_params.fontsize},
            "legend_params": {"loc": g.legend_params.loc, "ncol": g.legend_params.ncol},
            "chart_title_params": {
                "fontname": g.chart_title_params.fontname,
                "fontsize": g.chart_title_params.fontsize,
                "rotation": g.chart_title_params.rotation,
            },
            "x_tick_params": _tick_obj(g.x_tick_params),
            "y_tick_params": _tick_obj(g.y_tick_params),
            "grid_params": {
                "visible": g.grid_params.visible,
                "axis": g.grid_params.axis,
                "linestyle": g.grid_params.linestyle,
            },
        },
    }
    if isinstance(spec.series_props, LineProps):
        obj["line_properties"] = {
            "linestyles": list(spec.series_props.linestyles),
            "markers": list(spec.series_props.markers),
            "colors": list(spec.series_props.colors),
        }
    else:
        obj["bar_properties"] = {
            "hatches": list(spec.series_props.hatches),
            "colors": list(spec.series_props.colors),
        }
    return obj


def _tick_obj(t: TickParams) -> dict:
    return {
        "axis": t.axis,
        "which": t.which,
        "rotation": t.rotation,
        "labelsize": t.labelsize,
        "labelfontfamily": t.labelfontfamily,
    }


def serialize_spec(spec: ChartSpec) -> str:
    """Canonical JSON text: fixed key order, 4-space indent, trailing newline."""
    return json.dumps(_spec_to_obj(spec), indent=4, ensure_ascii=False) + "\n"


# strict parsing

def _want(obj: dict, key: str, typ, path: str):
    if key not in obj:
        raise SchemaViolation(f"{path}{key}", "missing")
    value = obj[key]
    if typ is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaViolation(f"{path}{key}", "must be a number")
        return value
    if typ is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaViolation(f"{path}{key}", "must be an integer")
        return value
    if not isinstance(value, typ):
        raise SchemaViolation(f"{path}{key}", f"must be {typ.__name__}")
    return value


def _no_extras(obj: dict, allowed: set[str], path: str):
    extras = set(obj) - allowed
    if extras:
        raise SchemaViolation(path + sorted(extras)[0], "unknown key")


def _parse_strict(text: str) -> ChartSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJson(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise SchemaViolation("", "top level must be an object")

    has_data = "underlying_data" in obj
    has_alias = "data_table" in obj
    if has_data and has_alias:
        raise SchemaViolation("data_table", "duplicate table key")
    if not (has_data or has_alias):
        raise SchemaViolation("underlying_data", "missing")
    table_key = "underlying_data" if has_data else "data_table"
    wire = decode_table(_want(obj, table_key, str, ""))
    table = wire.transposed()

    g_obj = _want(obj, "global_properties", dict, "")
    gp = "global_properties."
    chart_type = _want(g_obj, "chart_type", str, gp)
    if chart_type not in pool.CHART_TYPES:
        raise SchemaViolation(gp + "chart_type", f"unknown chart type {chart_type!r}")
    series_key = "line_properties" if chart_type == LINE else "bar_properties"
    allowed_root = {table_key, "chart_title", "x_axis_title", "y_axis_title", "global_properties", series_key}
    _no_extras(obj, allowed_root, "")

    _no_extras(g_obj, {"chart_type", "x_label_params", "y_label_params", "legend_params",
                       "chart_title_params", "x_tick_params", "y_tick_params", "grid_params"}, gp)

    def font_params(key: str) -> FontParams:
        sub = _want(g_obj, key, dict, gp)
        _no_extras(sub, {"fontname", "fontsize"}, f"{gp}{key}.")
        return FontParams(_want(sub, "fontname", str, f"{gp}{key}."), _want(sub, "fontsize", str, f"{gp}{key}."))

    legend_obj = _want(g_obj, "legend_params", dict, gp)
    _no_extras(legend_obj, {"loc", "ncol"}, gp + "legend_params.")
    title_obj = _want(g_obj, "chart_title_params", dict, gp)
    _no_extras(title_obj, {"fontname", "fontsize", "rotation"}, gp + "chart_title_params.")

    def tick_params(key: str) -> TickParams:
        sub = _want(g_obj, key, dict, gp)
        _no_extras(sub, {"axis", "which", "rotation", "labelsize", "labelfontfamily"}, f"{gp}{key}.")
        return TickParams(
            axis=_want(sub, "axis", str, f"{gp}{key}."),
            which=_want(sub, "which", str, f"{gp}{key}."),
            rotation=_want(sub, "rotation", float, f"{gp}{key}."),
            labelsize=_want(sub, "labelsize", str, f"{gp}{key}."),
            labelfontfamily=_want(sub, "labelfontfamily", str, f"{gp}{key}."),
        )

    grid_obj = _want(g_obj, "grid_params", dict, gp)
    _no_extras(grid_obj, {"visible", "axis", "linestyle"}, gp + "grid_params.")
    if not isinstance(grid_obj.get("visible"), bool):
        raise SchemaViolation(gp + "grid_params.visible", "must be true or false")

    globals_ = GlobalProps(
        chart_type=chart_type,
        x_label_params=font_params("x_label_params"),
        y_label_params=font_params("y_label_params"),
        legend_params=LegendParams(_want(legend_obj, "loc", int, gp + "legend_params."),
                                   _want(legend_obj, "ncol", int, gp + "legend_params.")),
        chart_title_params=TitleParams(
            _want(title_obj, "fontname", str, gp + "chart_title_params."),
            _want(title_obj, "fontsize", str, gp + "chart_title_params."),
            _want(title_obj, "rotation", float, gp + "chart_title_params."),
        ),
        x_tick_params=tick_params("x_tick_params"),
        y_tick_params=tick_params("y_tick_params"),
        grid_params=GridParams(grid_obj["visible"], _want(grid_obj, "axis", str, gp + "grid_params."),
                               _want(grid_obj, "linestyle", str, gp + "grid_params.")),
    )

    s_obj = _want(obj, series_key, dict, "")
    sp = series_key + "."

    def str_list(key: str) -> tuple[str, ...]:
        raw = _want(s_obj, key, list, sp)
        for i, v in enumerate(raw):
            if not isinstance(v, str):
                raise SchemaViolation(f"{sp}{key}[{i}]", "must be text")
        return tuple(raw)

    if chart_type == LINE:
        _no_extras(s_obj, {"linestyles", "markers", "colors"}, sp)
        props: LineProps | BarProps = LineProps(str_list("linestyles"), str_list("markers"), str_list("colors"))
    else:
        _no_extras(s_obj, {"hatches", "colors"}, sp)
        props = BarProps(str_list("hatches"), str_list("colors"))

    return ChartSpec(
        underlying_data=table,
        chart_title=_want(obj, "chart_title", str, ""),
        x_axis_title=_want(obj, "x_axis_title", str, ""),
        y_axis_title=_want(obj, "y_axis_title", str, ""),
        global_props=globals_,
        series_props=props,
    )


# repairing parser

def _lenient_table(raw, log: list[str]) -> DataTable:
    if not isinstance(raw, str):
        log.append("underlying_data: replaced with the default table")
        return default_table()
    try:
        return decode_table(raw).transposed()
    except (SchemaViolation, RaggedRow, EmptyTable, DuplicateSeries):
        pass
    # salvage: drop broken lines, blank out broken cells, dedupe names
    body = raw
    if body.endswith(ROW_SEP := " <0x0A> "):
        body = body[: -len(ROW_SEP)]
    lines = [ln for ln in body.split(" <0x0A> ") if ln]
    if len(lines) >= 2:
        header = lines[0].split(" | ")
        width = len(header)
        seen: set[str] = set()
        rows = []
        for line in lines[1:]:
            cells = line.split(" | ")
            if len(cells) != width or not cells[0] or cells[0] in seen:
                log.append(f"underlying_data: dropped row {cells[0]!r}")
                continue
            seen.add(cells[0])
            values: list[float | None] = []
            for cell in cells[1:]:
                try:
                    values.append(float(cell) if cell else None)
                except ValueError:
                    values.append(None)
                    log.append(f"underlying_data: blanked cell {cell!r}")
            rows.append(Series(_safe_cell(cells[0]), tuple(values)))
        headers = [_safe_cell(h) if h else f"col_{i}" for i, h in enumerate(header[1:])]
        if rows and width >= 2 and len(set(headers)) == len(headers):
            try:
                wire = DataTable(_safe_title(header[0]), tuple(headers), tuple(rows))
                return wire.transposed()
            except (SchemaViolation, RaggedRow, EmptyTable, DuplicateSeries):
                pass
    log.append("underlying_data: replaced with the default table")
    return default_table()


def _safe_cell(text: str) -> str:
    return text.replace(" | ", " ").replace("<0x0A>", " ").strip() or "cell"


def _safe_title(text: str) -> str:
    return text.replace(" | ", " ").replace("<0x0A>", " ")


def _pick(obj, key: str, typ, default, log: list[str], path: str):
    value = obj.get(key) if isinstance(obj, dict) else None
    if typ is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return value
    if typ is not float and isinstance(value, typ) and not (typ is int and isinstance(value, bool)):
        return value
    log.append(f"{path}{key}: defaulted to {default!r}")
    return default


def _pick_pool(obj, key: str, scope: str, pool_key: str, default, log: list[str], path: str):
    value = obj.get(key) if isinstance(obj, dict) else None
    if pool.in_pool(scope, pool_key, value):
        return value
    log.append(f"{path}{key}: defaulted to {default!r}")
    return default


def _parse_repair(text: str) -> ChartSpec:
    log: list[str] = []
    repaired = repair_json(text if isinstance(text, str) else "")
    if repaired != text:
        log.append("json: rebalanced truncated input")
    try:
        obj = json.loads(repaired)
    except json.JSONDecodeError:  # repair_json is total, but stay safe
        obj = {}
    if not isinstance(obj, dict):
        log.append("json: top level replaced with an object")
        obj = {}

    raw_table = obj.get("underlying_data", obj.get("data_table"))
    table = _lenient_table(raw_table, log)
    n = table.n_series

    g_obj = obj.get("global_properties")
    if not isinstance(g_obj, dict):
        g_obj = {}
        log.append("global_properties: defaulted")
    gp = "global_properties."
    chart_type = g_obj.get("chart_type")
    if chart_type not in pool.CHART_TYPES:
        log.append(f"{gp}chart_type: defaulted to {LINE!r}")
        chart_type = LINE

    def fix_font(key: str) -> FontParams:
        sub = g_obj.get(key)
        p = f"{gp}{key}."
        return FontParams(
            _pick_pool(sub, "fontname", "global", "x_label_fontname", DEFAULT_FONT_NAME, log, p),
            _pick_pool(sub, "fontsize", "global", "x_label_fontsize", DEFAULT_FONT_SIZE, log, p),
        )

    def fix_tick(key: str, axis: str) -> TickParams:
        sub = g_obj.get(key)
        p = f"{gp}{key}."
        rotation = sub.get("rotation") if isinstance(sub, dict) else None
        if rotation not in pool.TICK_ROTATIONS:
            log.append(f"{p}rotation: defaulted to 0")
            rotation = 0
        family = sub.get("labelfontfamily") if isinstance(sub, dict) else None
        if family not in pool.FONT_NAMES:
            log.append(f"{p}labelfontfamily: defaulted to {DEFAULT_FONT_NAME!r}")
            family = DEFAULT_FONT_NAME
        return TickParams(
            axis=axis,
            which="major",
            rotation=rotation,
            labelsize=_pick_pool(sub, "labelsize", "global", "x_tick_labelsize", DEFAULT_TICK_SIZE, log, p),
            labelfontfamily=family,
        )

    legend_obj = g_obj.get("legend_params")
    title_obj = g_obj.get("chart_title_params")
    grid_obj = g_obj.get("grid_params")
    title_rotation = title_obj.get("rotation") if isinstance(title_obj, dict) else None
    if title_rotation not in pool.TICK_ROTATIONS:
        log.append(f"{gp}chart_title_params.rotation: defaulted to 0")
        title_rotation = 0

    globals_ = GlobalProps(
        chart_type=chart_type,
        x_label_params=fix_font("x_label_params"),
        y_label_params=fix_font("y_label_params"),
        legend_params=LegendParams(
            _pick_pool(legend_obj, "loc", "global", "legend_loc", DEFAULT_LEGEND_LOC, log, gp + "legend_params."),
            _pick_pool(legend_obj, "ncol", "global", "legend_ncol", DEFAULT_LEGEND_NCOL, log, gp + "legend_params."),
        ),
        chart_title_params=TitleParams(
            _pick_pool(title_obj, "fontname", "global", "title_fontname", DEFAULT_FONT_NAME, log, gp + "chart_title_params."),
            _pick_pool(title_obj, "fontsize", "global", "title_fontsize", DEFAULT_FONT_SIZE, log, gp + "chart_title_params."),
            title_rotation,
        ),
        x_tick_params=fix_tick("x_tick_params", "x"),
        y_tick_params=fix_tick("y_tick_params", "y"),
        grid_params=GridParams(
            _pick(grid_obj, "visible", bool, DEFAULT_GRID_VISIBLE, log, gp + "grid_params."),
            _pick_pool(grid_obj, "axis", "global", "grid_axis", pool.GRID_AXES[0], log, gp + "grid_params."),
            _pick_pool(grid_obj, "linestyle", "global", "grid_linestyle", pool.GRID_LINESTYLES[0], log, gp + "grid_params."),
        ),
    )

    series_key = "line_properties" if chart_type == LINE else "bar_properties"
    s_obj = obj.get(series_key)
    if not isinstance(s_obj, dict):
        s_obj = {}
        log.append(f"{series_key}: defaulted")

    def fix_array(key: str, scope: str, pool_key: str) -> tuple[str, ...]:
        raw = s_obj.get(key)
        raw = raw if isinstance(raw, list) else []
        values = []
        choices = pool.pool_values(scope, pool_key)
        for i in range(n):
            v = raw[i] if i < len(raw) else None
            if not pool.in_pool(scope, pool_key, v):
                v = choices[i % len(choices)]
                log.append(f"{series_key}.{key}[{i}]: defaulted to {v!r}")
            values.append(v)
        return tuple(values)

    if chart_type == LINE:
        props: LineProps | BarProps = LineProps(
            fix_array("linestyles", "line", "linestyle"),
            fix_array("markers", "line", "marker"),
            fix_array("colors", "line", "color"),
        )
    else:
        props = BarProps(fix_array("hatches", "bar", "hatch"), fix_array("colors", "bar", "color"))

    return ChartSpec(
        underlying_data=table,
        chart_title=_pick(obj, "chart_title", str, "", log, ""),
        x_axis_title=_pick(obj, "x_axis_title", str, "", log, ""),
        y_axis_title=_pick(obj, "y_axis_title", str, "", log, ""),
        global_props=globals_,
        series_props=props,
        repair_log=tuple(log),
    )


def parse_spec(text: str, repair: bool = False) -> ChartSpec:
    """Parse canonical chart-spec JSON; repair mode never raises on bad input."""
    if repair:
        return _parse_repair(text)
    return _parse_strict(text)


def with_chart_type(spec: ChartSpec, chart_type: str, series_props: LineProps | BarProps) -> ChartSpec:
    return replace(spec, global_props=replace(spec.global_props, chart_type=chart_type),
                   series_props=series_props, repair_log=())
