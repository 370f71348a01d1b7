"""Edit operations: the typed payload produced by prompt parsing and consumed
by the edit engine. One subtype per editable pool entry plus the data ops."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SchemaViolation, UnknownSubtype
from .spec import GROUPED_BAR, LINE, STACKED_BAR

STYLE = "style"
LAYOUT = "layout"
FORMAT = "format"
DATA = "data_centric"

CATEGORIES = (STYLE, LAYOUT, FORMAT, DATA)

ALL_TYPES = (LINE, GROUPED_BAR, STACKED_BAR)
BAR_ONLY = (GROUPED_BAR, STACKED_BAR)
LINE_ONLY = (LINE,)


@dataclass(frozen=True)
class SubtypeInfo:
    name: str
    category: str
    chart_scope: tuple[str, ...]
    series_scoped: bool = False
    payload_keys: tuple[str, ...] = ()


_S = SubtypeInfo

SUBTYPES: dict[str, SubtypeInfo] = {s.name: s for s in (
    # style
    _S("plot_color", STYLE, ALL_TYPES, True, ("color",)),
    _S("line_style", STYLE, LINE_ONLY, True, ("linestyle",)),
    _S("marker", STYLE, LINE_ONLY, True, ("marker",)),
    _S("bar_pattern", STYLE, BAR_ONLY, True, ("hatch",)),
    _S("x_label_font_name", STYLE, ALL_TYPES, False, ("font",)),
    _S("x_label_font_size", STYLE, ALL_TYPES, False, ("size",)),
    _S("y_label_font_name", STYLE, ALL_TYPES, False, ("font",)),
    _S("y_label_font_size", STYLE, ALL_TYPES, False, ("size",)),
    _S("title_font_name", STYLE, ALL_TYPES, False, ("font",)),
    _S("title_font_size", STYLE, ALL_TYPES, False, ("size",)),
    _S("x_tick_label_size", STYLE, ALL_TYPES, False, ("size",)),
    _S("y_tick_label_size", STYLE, ALL_TYPES, False, ("size",)),
    # layout
    _S("grid_visibility", LAYOUT, ALL_TYPES, False, ("visible",)),
    _S("legend_position", LAYOUT, ALL_TYPES, False, ("loc",)),
    # format: one subtype per conversion direction
    _S("convert_line_to_grouped_bar", FORMAT, LINE_ONLY),
    _S("convert_line_to_stacked_bar", FORMAT, LINE_ONLY),
    _S("convert_grouped_bar_to_line", FORMAT, (GROUPED_BAR,)),
    _S("convert_grouped_bar_to_stacked_bar", FORMAT, (GROUPED_BAR,)),
    _S("convert_stacked_bar_to_line", FORMAT, (STACKED_BAR,)),
    _S("convert_stacked_bar_to_grouped_bar", FORMAT, (STACKED_BAR,)),
    # data-centric
    _S("range_filter", DATA, ALL_TYPES),  # payload: lo/hi or columns
    _S("series_filter_drop", DATA, ALL_TYPES, True),
    _S("series_filter_keep", DATA, ALL_TYPES, False, ("names",)),
    _S("upsert_point", DATA, ALL_TYPES, True, ("column", "value")),
    _S("upsert_series", DATA, ALL_TYPES, False, ("name", "values")),
)}

FORMAT_CONVERSIONS: dict[str, tuple[str, str]] = {
    "convert_line_to_grouped_bar": (LINE, GROUPED_BAR),
    "convert_line_to_stacked_bar": (LINE, STACKED_BAR),
    "convert_grouped_bar_to_line": (GROUPED_BAR, LINE),
    "convert_grouped_bar_to_stacked_bar": (GROUPED_BAR, STACKED_BAR),
    "convert_stacked_bar_to_line": (STACKED_BAR, LINE),
    "convert_stacked_bar_to_grouped_bar": (STACKED_BAR, GROUPED_BAR),
}

# style subtype -> flattened attribute path (global-scoped only)
GLOBAL_STYLE_PATHS = {
    "x_label_font_name": "global_properties.x_label_params.fontname",
    "x_label_font_size": "global_properties.x_label_params.fontsize",
    "y_label_font_name": "global_properties.y_label_params.fontname",
    "y_label_font_size": "global_properties.y_label_params.fontsize",
    "title_font_name": "global_properties.chart_title_params.fontname",
    "title_font_size": "global_properties.chart_title_params.fontsize",
    "x_tick_label_size": "global_properties.x_tick_params.labelsize",
    "y_tick_label_size": "global_properties.y_tick_params.labelsize",
}

_TUPLE_PAYLOAD_KEYS = ("names", "columns", "values")


@dataclass(frozen=True)
class EditOp:
    """A single chart edit. `target` is a series name for series-scoped subtypes."""

    category: str
    subtype: str
    target: str | None = None
    payload: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        info = SUBTYPES.get(self.subtype)
        if info is None:
            raise UnknownSubtype(f"unknown edit subtype {self.subtype!r}")
        if info.category != self.category:
            raise SchemaViolation("category", f"{self.subtype} belongs to {info.category}")
        payload = dict(self.payload)
        for key in _TUPLE_PAYLOAD_KEYS:
            if key in payload and not isinstance(payload[key], tuple):
                payload[key] = tuple(payload[key])
        object.__setattr__(self, "payload", payload)
        if info.series_scoped and not self.target:
            raise SchemaViolation("target", f"{self.subtype} needs a target series")


def op_info(op: EditOp) -> SubtypeInfo:
    return SUBTYPES[op.subtype]
