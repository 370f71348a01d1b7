import json

import pytest

from chartforge.errors import MalformedJson, PoolViolation, SchemaViolation
from chartforge.spec import LineProps, default_spec, parse_spec, serialize_spec

from fixtures import CANONICAL_LINE_SPEC, LEGACY_LINE_SPEC


def test_parse_reference_spec():
    s = parse_spec(CANONICAL_LINE_SPEC)
    assert s.chart_type == "line"
    assert s.underlying_data.series_names == ("2004", "1997")
    assert s.underlying_data.column_headers == (
        "OECD members", "Middle East & North Africa", "South Asia")
    assert s.underlying_data.rows[1].values == (21.08, 29.0, 14.15)
    assert isinstance(s.series_props, LineProps)
    assert s.series_props.colors == ("k", "r")
    assert s.series_props.markers == ("*", "s")
    assert s.global_props.legend_params.loc == 1
    assert s.global_props.legend_params.ncol == 1
    assert s.global_props.grid_params.visible is True
    assert s.global_props.grid_params.axis == "y"
    assert s.global_props.grid_params.linestyle == "dashed"
    assert s.global_props.x_label_params.fontname == "Serif"
    assert s.global_props.x_tick_params.labelfontfamily == "sans-serif"


def test_serialize_reference_spec_byte_identity():
    assert serialize_spec(parse_spec(CANONICAL_LINE_SPEC)) == CANONICAL_LINE_SPEC


def test_legacy_spec_strict_rejects_off_pool_linestyle():
    with pytest.raises(PoolViolation) as err:
        parse_spec(LEGACY_LINE_SPEC)
    assert err.value.key == "line_properties.linestyles[0]"
    assert err.value.value == "dashdot"


def test_legacy_spec_repair_salvages_everything_else():
    s = parse_spec(LEGACY_LINE_SPEC, repair=True)
    assert s.underlying_data.series_names == ("2004", "1997")
    assert s.series_props.colors == ("k", "r")
    assert s.series_props.linestyles[0] == "solid"  # defaulted
    assert s.series_props.linestyles[1] == "solid"  # untouched
    assert any("linestyles[0]" in entry for entry in s.repair_log)
    # structural round trip: 29.0 re-emits as 29, values unchanged
    again = parse_spec(serialize_spec(s))
    assert again == s


def test_structural_round_trip_of_legacy_values():
    s = parse_spec(LEGACY_LINE_SPEC, repair=True)
    assert s.underlying_data.rows[1].values == (21.08, 29.0, 14.15)
    assert "35.21 | 29 <0x0A>" in serialize_spec(s)


def test_data_table_alias_accepted_but_reemitted_canonically():
    aliased = CANONICAL_LINE_SPEC.replace('"underlying_data"', '"data_table"', 1)
    s = parse_spec(aliased)
    assert s == parse_spec(CANONICAL_LINE_SPEC)
    assert '"underlying_data"' in serialize_spec(s)


def test_both_table_keys_rejected():
    obj = json.loads(CANONICAL_LINE_SPEC)
    obj["data_table"] = obj["underlying_data"]
    with pytest.raises(SchemaViolation):
        parse_spec(json.dumps(obj))


def test_malformed_json():
    with pytest.raises(MalformedJson):
        parse_spec(CANONICAL_LINE_SPEC[: len(CANONICAL_LINE_SPEC) // 2])


def test_unknown_key_rejected():
    obj = json.loads(CANONICAL_LINE_SPEC)
    obj["bar_properties"] = {"hatches": ["xx", "."], "colors": ["b", "g"]}
    with pytest.raises(SchemaViolation):
        parse_spec(json.dumps(obj))
    obj = json.loads(CANONICAL_LINE_SPEC)
    obj["global_properties"]["extra"] = 1
    with pytest.raises(SchemaViolation):
        parse_spec(json.dumps(obj))


def test_missing_key_rejected():
    obj = json.loads(CANONICAL_LINE_SPEC)
    del obj["global_properties"]["legend_params"]
    with pytest.raises(SchemaViolation):
        parse_spec(json.dumps(obj))


def test_wrong_series_array_length():
    obj = json.loads(CANONICAL_LINE_SPEC)
    obj["line_properties"]["colors"] = ["k"]
    with pytest.raises(SchemaViolation) as err:
        parse_spec(json.dumps(obj))
    assert "colors" in str(err.value)


def test_bad_rotation_rejected():
    obj = json.loads(CANONICAL_LINE_SPEC)
    obj["global_properties"]["x_tick_params"]["rotation"] = 30
    with pytest.raises(SchemaViolation):
        parse_spec(json.dumps(obj))


def test_bool_not_accepted_as_int():
    obj = json.loads(CANONICAL_LINE_SPEC)
    obj["global_properties"]["legend_params"]["loc"] = True
    with pytest.raises(SchemaViolation):
        parse_spec(json.dumps(obj))


def test_repair_of_empty_object_gives_default_spec():
    s = parse_spec("{}", repair=True)
    assert s == default_spec()
    assert s.underlying_data.series_names == ("series_0",)
    assert s.global_props.grid_params.visible is False
    assert s.global_props.legend_params.loc == 1
    assert len(s.repair_log) > 0


def test_repair_never_raises_on_garbage():
    for text in ["", "not json", "[1, 2", '{"underlying_data": 5', "\x00\x01", '{"a"']:
        s = parse_spec(text, repair=True)
        serialize_spec(s)  # still a valid spec


def test_repair_is_idempotent():
    for text in ["{}", LEGACY_LINE_SPEC, CANONICAL_LINE_SPEC[: len(CANONICAL_LINE_SPEC) // 2]]:
        first = parse_spec(text, repair=True)
        second = parse_spec(serialize_spec(first), repair=True)
        assert second == first
        assert second.repair_log == ()


def test_repair_salvages_truncated_table_rows():
    s = parse_spec(CANONICAL_LINE_SPEC[:90] + '"}', repair=True)
    # the first table line survives truncation at position 90
    assert s.underlying_data.column_headers[0] == "OECD members"


def test_strict_round_trip_of_default_spec():
    s = default_spec()
    assert parse_spec(serialize_spec(s)) == s


def test_repair_accepts_valid_spec_untouched():
    s = parse_spec(CANONICAL_LINE_SPEC, repair=True)
    assert s == parse_spec(CANONICAL_LINE_SPEC)
    assert s.repair_log == ()
