"""Edit engine: apply typed ops to chart specs and diff the results.

changed_keys/unchanged_keys partition the edited spec's flattened attribute
paths plus the single pseudo-key "underlying_data" for table changes.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace

from . import pool
from .errors import EmptyResult, InvalidForChartType, PoolViolation, TargetMissing
from .metrics import DATA_KEY, flatten_attributes
from .ops import DATA, FORMAT, FORMAT_CONVERSIONS, GLOBAL_STYLE_PATHS, LAYOUT, STYLE, EditOp
from .spec import LINE, STACKED_BAR, BarProps, ChartSpec, LineProps, serialize_spec, with_chart_type
from .table import DataTable, Series, encode_table


@dataclass(frozen=True)
class EditResult:
    edited: ChartSpec
    changed_keys: frozenset[str]
    unchanged_keys: frozenset[str]


def diff_specs(before: ChartSpec, after: ChartSpec) -> frozenset[str]:
    """Flattened paths of `after` whose values differ from `before`,
    plus "underlying_data" when the tables differ."""
    flat_before = flatten_attributes(before)
    flat_after = flatten_attributes(after)
    missing = object()
    changed = {k for k, v in flat_after.items() if flat_before.get(k, missing) != v}
    if encode_table(before.underlying_data) != encode_table(after.underlying_data):
        changed.add(DATA_KEY)
    return frozenset(changed)


def _result(before: ChartSpec, after: ChartSpec) -> EditResult:
    changed = diff_specs(before, after)
    universe = set(flatten_attributes(after)) | {DATA_KEY}
    return EditResult(after, changed, frozenset(universe - changed))


def _draw_rng(spec: ChartSpec, op: EditOp) -> random.Random:
    digest = hashlib.blake2b(serialize_spec(spec).encode("utf-8"), digest_size=8).hexdigest()
    return random.Random(f"{digest}:{op.subtype}:{op.seed}")


def _series_index(spec: ChartSpec, name: str) -> int:
    try:
        return spec.underlying_data.series_index(name)
    except KeyError:
        raise TargetMissing(f"no series named {name!r}") from None


def _replace_at(values: tuple, i: int, value) -> tuple:
    return values[:i] + (value,) + values[i + 1:]


def apply_edit(spec: ChartSpec, op: EditOp) -> EditResult:
    """Apply one op; raises instead of guessing when the op does not fit."""
    if op.category == STYLE:
        return _apply_style(spec, op)
    if op.category == LAYOUT:
        return _apply_layout(spec, op)
    if op.category == FORMAT:
        return _apply_format(spec, op)
    if op.category == DATA:
        return _apply_data(spec, op)
    raise TargetMissing(f"unknown category {op.category!r}")


# style ---------------------------------------------------------------------

def _apply_style(spec: ChartSpec, op: EditOp) -> EditResult:
    if op.subtype in GLOBAL_STYLE_PATHS:
        return _apply_global_style(spec, op)
    i = _series_index(spec, op.target)
    props = spec.series_props
    if op.subtype == "plot_color":
        value = op.payload["color"]
        _require_pool("bar" if spec.is_bar else "line", "color", value)
        edited = replace(spec, series_props=replace(props, colors=_replace_at(props.colors, i, value)),
                         repair_log=())
    elif op.subtype == "line_style":
        if spec.is_bar:
            raise InvalidForChartType("line styles only apply to line charts")
        value = op.payload["linestyle"]
        _require_pool("line", "linestyle", value)
        edited = replace(spec, series_props=replace(props, linestyles=_replace_at(props.linestyles, i, value)),
                         repair_log=())
    elif op.subtype == "marker":
        if spec.is_bar:
            raise InvalidForChartType("markers only apply to line charts")
        value = op.payload["marker"]
        _require_pool("line", "marker", value)
        edited = replace(spec, series_props=replace(props, markers=_replace_at(props.markers, i, value)),
                         repair_log=())
    elif op.subtype == "bar_pattern":
        if not spec.is_bar:
            raise InvalidForChartType("bar patterns only apply to bar charts")
        value = op.payload["hatch"]
        _require_pool("bar", "hatch", value)
        edited = replace(spec, series_props=replace(props, hatches=_replace_at(props.hatches, i, value)),
                         repair_log=())
    else:
        raise TargetMissing(f"unknown style subtype {op.subtype!r}")
    return _result(spec, edited)


_POOL_BY_GLOBAL_SUBTYPE = {
    "x_label_font_name": ("global", "x_label_fontname"),
    "x_label_font_size": ("global", "x_label_fontsize"),
    "y_label_font_name": ("global", "y_label_fontname"),
    "y_label_font_size": ("global", "y_label_fontsize"),
    "title_font_name": ("global", "title_fontname"),
    "title_font_size": ("global", "title_fontsize"),
    "x_tick_label_size": ("global", "x_tick_labelsize"),
    "y_tick_label_size": ("global", "y_tick_labelsize"),
}


def _require_pool(scope: str, key: str, value):
    if not pool.in_pool(scope, key, value):
        raise PoolViolation(f"{scope}.{key}", value)


def _apply_global_style(spec: ChartSpec, op: EditOp) -> EditResult:
    value = op.payload["font"] if op.subtype.endswith("font_name") else op.payload["size"]
    scope, key = _POOL_BY_GLOBAL_SUBTYPE[op.subtype]
    _require_pool(scope, key, value)
    g = spec.global_props
    if op.subtype == "x_label_font_name":
        g = replace(g, x_label_params=replace(g.x_label_params, fontname=value))
    elif op.subtype == "x_label_font_size":
        g = replace(g, x_label_params=replace(g.x_label_params, fontsize=value))
    elif op.subtype == "y_label_font_name":
        g = replace(g, y_label_params=replace(g.y_label_params, fontname=value))
    elif op.subtype == "y_label_font_size":
        g = replace(g, y_label_params=replace(g.y_label_params, fontsize=value))
    elif op.subtype == "title_font_name":
        g = replace(g, chart_title_params=replace(g.chart_title_params, fontname=value))
    elif op.subtype == "title_font_size":
        g = replace(g, chart_title_params=replace(g.chart_title_params, fontsize=value))
    elif op.subtype == "x_tick_label_size":
        g = replace(g, x_tick_params=replace(g.x_tick_params, labelsize=value))
    else:
        g = replace(g, y_tick_params=replace(g.y_tick_params, labelsize=value))
    return _result(spec, replace(spec, global_props=g, repair_log=()))


# layout ----------------------------------------------------------------------

def _apply_layout(spec: ChartSpec, op: EditOp) -> EditResult:
    g = spec.global_props
    if op.subtype == "grid_visibility":
        visible = op.payload["visible"]
        if not isinstance(visible, bool):
            raise PoolViolation("global.grid_visible", visible)
        g = replace(g, grid_params=replace(g.grid_params, visible=visible))
    elif op.subtype == "legend_position":
        loc = op.payload["loc"]
        _require_pool("global", "legend_loc", loc)
        g = replace(g, legend_params=replace(g.legend_params, loc=loc))
    else:
        raise TargetMissing(f"unknown layout subtype {op.subtype!r}")
    return _result(spec, replace(spec, global_props=g, repair_log=()))


# format ----------------------------------------------------------------------

def _apply_format(spec: ChartSpec, op: EditOp) -> EditResult:
    source, target = FORMAT_CONVERSIONS[op.subtype]
    if spec.chart_type == target:
        return _result(spec, spec)  # set-to-value semantics: already there
    if spec.chart_type != source:
        raise TargetMissing(f"spec is {spec.chart_type}, op converts from {source}")
    if target == STACKED_BAR and _has_negative(spec.underlying_data):
        raise InvalidForChartType("stacked bars cannot represent negative values")
    n = spec.n_series
    colors = spec.series_props.colors  # carried over positionally
    rng = _draw_rng(spec, op)
    if target == LINE:
        props: LineProps | BarProps = LineProps(
            tuple(rng.choice(pool.LINESTYLES) for _ in range(n)),
            tuple(rng.choice(pool.MARKERS) for _ in range(n)),
            colors,
        )
    elif isinstance(spec.series_props, BarProps):
        props = BarProps(spec.series_props.hatches, colors)  # bar-to-bar keeps hatches
    else:
        props = BarProps(tuple(rng.choice(pool.HATCHES) for _ in range(n)), colors)
    return _result(spec, with_chart_type(spec, target, props))


def _has_negative(table: DataTable) -> bool:
    return any(v is not None and v < 0 for s in table.rows for v in s.values)


# data-centric ------------------------------------------------------------

def _apply_data(spec: ChartSpec, op: EditOp) -> EditResult:
    if op.subtype == "range_filter":
        return _range_filter(spec, op)
    if op.subtype == "series_filter_drop":
        return _series_filter(spec, keep=False, names=(op.target,), op=op)
    if op.subtype == "series_filter_keep":
        return _series_filter(spec, keep=True, names=op.payload["names"], op=op)
    if op.subtype == "upsert_point":
        return _upsert_point(spec, op)
    if op.subtype == "upsert_series":
        return _upsert_series(spec, op)
    raise TargetMissing(f"unknown data subtype {op.subtype!r}")


def _rebuild_table(spec: ChartSpec, table: DataTable) -> ChartSpec:
    return replace(spec, underlying_data=table, repair_log=())


def _range_filter(spec: ChartSpec, op: EditOp) -> EditResult:
    table = spec.underlying_data
    if "columns" in op.payload:
        wanted = op.payload["columns"]
        if not wanted:
            raise EmptyResult("column filter keeps nothing")
        missing = [c for c in wanted if c not in table.column_headers]
        if missing:
            raise TargetMissing(f"no column named {missing[0]!r}")
        keep = [j for j, h in enumerate(table.column_headers) if h in set(wanted)]
    else:
        lo, hi = op.payload["lo"], op.payload["hi"]
        keep = []
        for j, header in enumerate(table.column_headers):
            try:
                x = float(header)
            except ValueError:
                continue
            if lo <= x <= hi:
                keep.append(j)
        if not keep:
            raise EmptyResult(f"no column headers inside [{lo}, {hi}]")
    if len(keep) == table.n_columns:
        return _result(spec, spec)  # keep-all is the identity
    headers = tuple(table.column_headers[j] for j in keep)
    rows = tuple(Series(s.name, tuple(s.values[j] for j in keep)) for s in table.rows)
    return _result(spec, _rebuild_table(spec, DataTable(table.series_axis_title, headers, rows)))


def _series_filter(spec: ChartSpec, keep: bool, names: tuple[str, ...], op: EditOp) -> EditResult:
    table = spec.underlying_data
    for name in names:
        _series_index(spec, name)
    chosen = set(names)
    indices = [i for i, s in enumerate(table.rows) if (s.name in chosen) == keep]
    if not indices:
        raise EmptyResult("filter would drop every series")
    if len(indices) == table.n_series:
        return _result(spec, spec)
    rows = tuple(table.rows[i] for i in indices)
    new_table = DataTable(table.series_axis_title, table.column_headers, rows)
    props = _filter_props(spec.series_props, indices)
    return _result(spec, replace(spec, underlying_data=new_table, series_props=props, repair_log=()))


def _filter_props(props: LineProps | BarProps, indices: list[int]):
    if isinstance(props, LineProps):
        return LineProps(
            tuple(props.linestyles[i] for i in indices),
            tuple(props.markers[i] for i in indices),
            tuple(props.colors[i] for i in indices),
        )
    return BarProps(tuple(props.hatches[i] for i in indices), tuple(props.colors[i] for i in indices))


def _upsert_point(spec: ChartSpec, op: EditOp) -> EditResult:
    table = spec.underlying_data
    i = _series_index(spec, op.target)
    column = op.payload["column"]
    value = float(op.payload["value"])
    if column in table.column_headers:
        j = table.column_headers.index(column)
        rows = tuple(
            Series(s.name, _replace_at(s.values, j, value)) if k == i else s
            for k, s in enumerate(table.rows)
        )
        headers = table.column_headers
    else:  # append a column; other series get an empty cell
        headers = table.column_headers + (column,)
        rows = tuple(
            Series(s.name, s.values + ((value,) if k == i else (None,)))
            for k, s in enumerate(table.rows)
        )
    return _result(spec, _rebuild_table(spec, DataTable(table.series_axis_title, headers, rows)))


def _upsert_series(spec: ChartSpec, op: EditOp) -> EditResult:
    table = spec.underlying_data
    name = op.payload["name"]
    values = tuple(float(v) for v in op.payload["values"])
    if name in table.series_names:
        i = table.series_index(name)
        rows = tuple(Series(name, values) if k == i else s for k, s in enumerate(table.rows))
        return _result(spec, _rebuild_table(spec, DataTable(table.series_axis_title, table.column_headers, rows)))
    rows = table.rows + (Series(name, values),)
    new_table = DataTable(table.series_axis_title, table.column_headers, rows)
    rng = _draw_rng(spec, op)
    props = spec.series_props
    unused = [c for c in pool.COLORS if c not in props.colors]
    color = rng.choice(unused or list(pool.COLORS))
    if isinstance(props, LineProps):
        new_props: LineProps | BarProps = LineProps(
            props.linestyles + (rng.choice(pool.LINESTYLES),),
            props.markers + (rng.choice(pool.MARKERS),),
            props.colors + (color,),
        )
    else:
        new_props = BarProps(props.hatches + (rng.choice(pool.HATCHES),), props.colors + (color,))
    return _result(spec, replace(spec, underlying_data=new_table, series_props=new_props, repair_log=()))
