"""Edit engine: one op in, edited spec plus changed-key bookkeeping out."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chartforge import pool
from chartforge.edits import apply_edit, diff_specs
from chartforge.errors import EmptyResult, InvalidForChartType, PoolViolation, RaggedRow, TargetMissing
from chartforge.metrics import DATA_KEY, flatten_attributes
from chartforge.ops import EditOp
from chartforge.spec import default_spec, parse_spec, serialize_spec
from chartforge.table import DataTable, Series

from fixtures import CANONICAL_LINE_SPEC


@pytest.fixture()
def line_spec():
    return parse_spec(CANONICAL_LINE_SPEC)


@pytest.fixture()
def numeric_spec():
    # numeric column headers so interval filters have something to match
    table = DataTable("x", ("1", "2", "3"),
                      (Series("a", (1.0, 2.0, 3.0)), Series("b", (4.0, 5.0, 6.0))))
    return default_spec("line", table)


def assert_partition(result):
    universe = set(flatten_attributes(result.edited)) | {DATA_KEY}
    assert result.changed_keys | result.unchanged_keys == universe
    assert not result.changed_keys & result.unchanged_keys


# style ---------------------------------------------------------------------

def test_plot_color_changes_one_key(line_spec):
    r = apply_edit(line_spec, EditOp("style", "plot_color", "1997", {"color": "b"}))
    assert r.edited.series_props.colors == ("k", "b")
    assert r.changed_keys == {"line_properties.colors[1]"}
    assert r.edited.underlying_data == line_spec.underlying_data
    assert_partition(r)


def test_set_to_current_value_changes_nothing(line_spec):
    r = apply_edit(line_spec, EditOp("style", "plot_color", "2004", {"color": "k"}))
    assert r.changed_keys == frozenset()
    assert r.edited == line_spec


def test_style_edit_is_idempotent(line_spec):
    op = EditOp("style", "marker", "2004", {"marker": "^"})
    first = apply_edit(line_spec, op)
    second = apply_edit(first.edited, op)
    assert first.edited == second.edited
    assert second.changed_keys == frozenset()


def test_plot_color_outside_pool(line_spec):
    with pytest.raises(PoolViolation):
        apply_edit(line_spec, EditOp("style", "plot_color", "2004", {"color": "purple"}))


def test_unknown_series_target(line_spec):
    with pytest.raises(TargetMissing):
        apply_edit(line_spec, EditOp("style", "plot_color", "2010", {"color": "b"}))


def test_line_style_rejected_on_bar(line_spec):
    bar = apply_edit(line_spec, EditOp("format", "convert_line_to_grouped_bar")).edited
    with pytest.raises(InvalidForChartType):
        apply_edit(bar, EditOp("style", "line_style", "2004", {"linestyle": "dotted"}))
    with pytest.raises(InvalidForChartType):
        apply_edit(bar, EditOp("style", "marker", "2004", {"marker": "o"}))


def test_bar_pattern_rejected_on_line(line_spec):
    with pytest.raises(InvalidForChartType):
        apply_edit(line_spec, EditOp("style", "bar_pattern", "2004", {"hatch": "xx"}))


def test_global_style_paths(line_spec):
    cases = [
        (EditOp("style", "title_font_size", payload={"size": "x-large"}),
         "global_properties.chart_title_params.fontsize", "x-large"),
        (EditOp("style", "x_label_font_name", payload={"font": "monospace"}),
         "global_properties.x_label_params.fontname", "monospace"),
        (EditOp("style", "y_tick_label_size", payload={"size": "large"}),
         "global_properties.y_tick_params.labelsize", "large"),
    ]
    for op, path, value in cases:
        r = apply_edit(line_spec, op)
        assert r.changed_keys == {path}
        assert flatten_attributes(r.edited)[path] == value


def test_global_style_outside_pool(line_spec):
    with pytest.raises(PoolViolation):
        apply_edit(line_spec, EditOp("style", "x_tick_label_size", payload={"size": "x-large"}))


# layout ----------------------------------------------------------------------

def test_grid_toggle(line_spec):
    off = apply_edit(line_spec, EditOp("layout", "grid_visibility", payload={"visible": False}))
    assert off.changed_keys == {"global_properties.grid_params.visible"}
    on_again = apply_edit(line_spec, EditOp("layout", "grid_visibility", payload={"visible": True}))
    assert on_again.changed_keys == frozenset()


def test_legend_move(line_spec):
    r = apply_edit(line_spec, EditOp("layout", "legend_position", payload={"loc": 4}))
    assert r.changed_keys == {"global_properties.legend_params.loc"}
    assert r.edited.global_props.legend_params.loc == 4
    with pytest.raises(PoolViolation):
        apply_edit(line_spec, EditOp("layout", "legend_position", payload={"loc": 7}))


# format ----------------------------------------------------------------------

def test_line_to_grouped_bar(line_spec):
    r = apply_edit(line_spec, EditOp("format", "convert_line_to_grouped_bar"))
    assert r.edited.chart_type == "grouped_vertical_bar"
    assert r.edited.series_props.colors == ("k", "r")  # carried over
    assert all(h in pool.HATCHES for h in r.edited.series_props.hatches)
    assert "global_properties.chart_type" in r.changed_keys
    # hatches did not exist before the conversion, so every slot counts as changed
    assert {"bar_properties.hatches[0]", "bar_properties.hatches[1]"} <= r.changed_keys
    assert not any(k.startswith("line_properties") for k in r.changed_keys)
    assert_partition(r)


def test_conversion_to_current_type_is_identity(line_spec):
    bar = apply_edit(line_spec, EditOp("format", "convert_line_to_grouped_bar")).edited
    again = apply_edit(bar, EditOp("format", "convert_line_to_grouped_bar"))
    assert again.changed_keys == frozenset()
    assert again.edited == bar
    other_route = apply_edit(bar, EditOp("format", "convert_stacked_bar_to_grouped_bar"))
    assert other_route.changed_keys == frozenset()


def test_conversion_from_wrong_type(line_spec):
    with pytest.raises(TargetMissing):
        apply_edit(line_spec, EditOp("format", "convert_grouped_bar_to_stacked_bar"))


def test_negative_values_block_stacking(numeric_spec):
    dented = apply_edit(numeric_spec, EditOp(
        "data_centric", "upsert_point", "a", {"column": "2", "value": -5.0})).edited
    with pytest.raises(InvalidForChartType):
        apply_edit(dented, EditOp("format", "convert_line_to_stacked_bar"))


def test_grouped_to_stacked_keeps_hatches(line_spec):
    grouped = apply_edit(line_spec, EditOp("format", "convert_line_to_grouped_bar")).edited
    r = apply_edit(grouped, EditOp("format", "convert_grouped_bar_to_stacked_bar"))
    assert r.edited.series_props == grouped.series_props
    assert r.changed_keys == {"global_properties.chart_type"}


def test_round_trip_conversion_preserves_table(line_spec):
    bar = apply_edit(line_spec, EditOp("format", "convert_line_to_grouped_bar")).edited
    back = apply_edit(bar, EditOp("format", "convert_grouped_bar_to_line")).edited
    assert back.underlying_data == line_spec.underlying_data
    assert back.series_props.colors == line_spec.series_props.colors
    assert back.chart_type == "line"


def test_conversion_draws_are_deterministic(line_spec):
    op = EditOp("format", "convert_line_to_grouped_bar")
    a = apply_edit(line_spec, op).edited
    b = apply_edit(line_spec, op).edited
    assert serialize_spec(a) == serialize_spec(b)
    # seed feeds the style draws, so some seed produces a different result
    variants = {serialize_spec(apply_edit(line_spec, EditOp(
        "format", "convert_line_to_grouped_bar", seed=s)).edited) for s in range(6)}
    assert len(variants) > 1


# data-centric ------------------------------------------------------------

def test_range_filter_interval(numeric_spec):
    r = apply_edit(numeric_spec, EditOp("data_centric", "range_filter", payload={"lo": 2.0, "hi": 3.0}))
    assert r.edited.underlying_data.column_headers == ("2", "3")
    assert r.edited.underlying_data.rows[0].values == (2.0, 3.0)
    assert r.changed_keys == {DATA_KEY}
    assert_partition(r)


def test_range_filter_keep_all_is_identity(numeric_spec):
    r = apply_edit(numeric_spec, EditOp("data_centric", "range_filter", payload={"lo": 0.0, "hi": 9.0}))
    assert r.changed_keys == frozenset()
    assert r.edited == numeric_spec


def test_range_filter_keeping_nothing(numeric_spec, line_spec):
    with pytest.raises(EmptyResult):
        apply_edit(numeric_spec, EditOp("data_centric", "range_filter", payload={"lo": 10.0, "hi": 20.0}))
    with pytest.raises(EmptyResult):  # no numeric headers at all
        apply_edit(line_spec, EditOp("data_centric", "range_filter", payload={"lo": 0.0, "hi": 9999.0}))


def test_range_filter_named_columns(numeric_spec):
    r = apply_edit(numeric_spec, EditOp("data_centric", "range_filter", payload={"columns": ("3", "1")}))
    assert r.edited.underlying_data.column_headers == ("1", "3")  # original order wins
    with pytest.raises(TargetMissing):
        apply_edit(numeric_spec, EditOp("data_centric", "range_filter", payload={"columns": ("1", "9")}))
    with pytest.raises(EmptyResult):
        apply_edit(numeric_spec, EditOp("data_centric", "range_filter", payload={"columns": ()}))


def test_drop_series(numeric_spec):
    r = apply_edit(numeric_spec, EditOp("data_centric", "series_filter_drop", "b"))
    assert r.edited.underlying_data.series_names == ("a",)
    assert len(r.edited.series_props.colors) == 1
    assert r.changed_keys == {DATA_KEY}  # surviving series keeps slot 0 styling
    with pytest.raises(TargetMissing):
        apply_edit(numeric_spec, EditOp("data_centric", "series_filter_drop", "z"))
    with pytest.raises(EmptyResult):
        apply_edit(r.edited, EditOp("data_centric", "series_filter_drop", "a"))


def test_drop_first_series_shifts_styles(numeric_spec):
    before = numeric_spec.series_props
    r = apply_edit(numeric_spec, EditOp("data_centric", "series_filter_drop", "a"))
    assert r.edited.series_props.colors == (before.colors[1],)
    assert DATA_KEY in r.changed_keys
    if before.colors[0] != before.colors[1]:
        assert "line_properties.colors[0]" in r.changed_keys


def test_keep_series(numeric_spec):
    r = apply_edit(numeric_spec, EditOp("data_centric", "series_filter_keep", payload={"names": ("b",)}))
    assert r.edited.underlying_data.series_names == ("b",)
    keep_all = apply_edit(numeric_spec, EditOp(
        "data_centric", "series_filter_keep", payload={"names": ("a", "b")}))
    assert keep_all.changed_keys == frozenset()
    assert keep_all.edited == numeric_spec
    with pytest.raises(TargetMissing):
        apply_edit(numeric_spec, EditOp("data_centric", "series_filter_keep", payload={"names": ("a", "z")}))


def test_upsert_point_updates_existing_cell(numeric_spec):
    r = apply_edit(numeric_spec, EditOp("data_centric", "upsert_point", "a", {"column": "2", "value": 9.0}))
    assert r.edited.underlying_data.rows[0].values == (1.0, 9.0, 3.0)
    assert r.edited.underlying_data.rows[1].values == (4.0, 5.0, 6.0)
    assert r.changed_keys == {DATA_KEY}


def test_upsert_point_appends_column(numeric_spec):
    r = apply_edit(numeric_spec, EditOp("data_centric", "upsert_point", "a", {"column": "4", "value": 7.0}))
    t = r.edited.underlying_data
    assert t.column_headers == ("1", "2", "3", "4")
    assert t.rows[0].values == (1.0, 2.0, 3.0, 7.0)
    assert t.rows[1].values == (4.0, 5.0, 6.0, None)
    with pytest.raises(TargetMissing):
        apply_edit(numeric_spec, EditOp("data_centric", "upsert_point", "z", {"column": "1", "value": 0.0}))


def test_upsert_series_replaces_values(numeric_spec):
    r = apply_edit(numeric_spec, EditOp(
        "data_centric", "upsert_series", payload={"name": "a", "values": (9.0, 9.0, 9.0)}))
    assert r.edited.underlying_data.rows[0].values == (9.0, 9.0, 9.0)
    assert r.edited.series_props == numeric_spec.series_props
    assert r.changed_keys == {DATA_KEY}


def test_upsert_series_appends_with_fresh_color(numeric_spec):
    r = apply_edit(numeric_spec, EditOp(
        "data_centric", "upsert_series", payload={"name": "c", "values": (7.0, 8.0, 9.0)}))
    t = r.edited.underlying_data
    assert t.series_names == ("a", "b", "c")
    props = r.edited.series_props
    assert props.colors[2] not in numeric_spec.series_props.colors
    assert props.colors[:2] == numeric_spec.series_props.colors
    assert {"line_properties.colors[2]", "line_properties.markers[2]",
            "line_properties.linestyles[2]", DATA_KEY} <= r.changed_keys
    assert_partition(r)


def test_upsert_series_wrong_arity(numeric_spec):
    with pytest.raises(RaggedRow):
        apply_edit(numeric_spec, EditOp(
            "data_centric", "upsert_series", payload={"name": "c", "values": (7.0, 8.0)}))


# diff + composition -----------------------------------------------------------

def test_diff_specs_matches_changed_keys(line_spec):
    ops = [
        EditOp("style", "plot_color", "1997", {"color": "g"}),
        EditOp("layout", "legend_position", payload={"loc": 2}),
        EditOp("format", "convert_line_to_stacked_bar"),
        EditOp("data_centric", "upsert_point", "2004", {"column": "South Asia", "value": 1.0}),
    ]
    for op in ops:
        r = apply_edit(line_spec, op)
        assert diff_specs(line_spec, r.edited) == r.changed_keys
        assert_partition(r)


def test_disjoint_style_edits_commute(line_spec):
    color = EditOp("style", "plot_color", "2004", {"color": "m"})
    marker = EditOp("style", "marker", "1997", {"marker": "o"})
    ab = apply_edit(apply_edit(line_spec, color).edited, marker)
    ba = apply_edit(apply_edit(line_spec, marker).edited, color)
    assert ab.edited == ba.edited
    combined = diff_specs(line_spec, ab.edited)
    assert combined == {"line_properties.colors[0]", "line_properties.markers[1]"}


@settings(max_examples=40, deadline=None)
@given(
    series=st.sampled_from(("2004", "1997")),
    color=st.sampled_from(pool.COLORS),
    marker=st.sampled_from(pool.MARKERS),
    loc=st.sampled_from(pool.LEGEND_LOCS),
    visible=st.booleans(),
)
def test_property_edits_idempotent_and_partitioned(series, color, marker, loc, visible):
    spec = parse_spec(CANONICAL_LINE_SPEC)
    ops = [
        EditOp("style", "plot_color", series, {"color": color}),
        EditOp("style", "marker", series, {"marker": marker}),
        EditOp("layout", "legend_position", payload={"loc": loc}),
        EditOp("layout", "grid_visibility", payload={"visible": visible}),
    ]
    for op in ops:
        first = apply_edit(spec, op)
        assert_partition(first)
        second = apply_edit(first.edited, op)
        assert second.changed_keys == frozenset()
        assert second.edited == first.edited
        spec = first.edited
