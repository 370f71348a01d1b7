"""Frozen reference texts shared across test modules."""

# Canonical two-series line spec. Handwritten bytes; serialize_spec(parse_spec(...))
# must reproduce this text exactly.
CANONICAL_LINE_SPEC = """\
{
    "underlying_data": "Country Name | 2004 | 1997 <0x0A> OECD members | 23.66 | 21.08 <0x0A> Middle East & North Africa | 35.21 | 29 <0x0A> South Asia | 20.33 | 14.15 <0x0A> ",
    "chart_title": "Imp",
    "x_axis_title": "Country Name",
    "y_axis_title": "Values",
    "global_properties": {
        "chart_type": "line",
        "x_label_params": {
            "fontname": "Serif",
            "fontsize": "x-large"
        },
        "y_label_params": {
            "fontname": "Serif",
            "fontsize": "x-large"
        },
        "legend_params": {
            "loc": 1,
            "ncol": 1
        },
        "chart_title_params": {
            "fontname": "Serif",
            "fontsize": "medium",
            "rotation": 0
        },
        "x_tick_params": {
            "axis": "x",
            "which": "major",
            "rotation": 0,
            "labelsize": "medium",
            "labelfontfamily": "sans-serif"
        },
        "y_tick_params": {
            "axis": "y",
            "which": "major",
            "rotation": 0,
            "labelsize": "medium",
            "labelfontfamily": "sans-serif"
        },
        "grid_params": {
            "visible": true,
            "axis": "y",
            "linestyle": "dashed"
        }
    },
    "line_properties": {
        "linestyles": [
            "dashed",
            "solid"
        ],
        "markers": [
            "*",
            "s"
        ],
        "colors": [
            "k",
            "r"
        ]
    }
}
"""

# Same chart as published elsewhere: linestyle value outside the pool and a
# "29.0" table cell. Strict parsing must reject it; repair mode must salvage it.
LEGACY_LINE_SPEC = CANONICAL_LINE_SPEC.replace('"dashed",\n            "solid"',
                                               '"dashdot",\n            "solid"')
LEGACY_LINE_SPEC = LEGACY_LINE_SPEC.replace("35.21 | 29 <0x0A>", "35.21 | 29.0 <0x0A>")

TABLE_WIRE = ("Country Name | 2004 | 1997 <0x0A> "
              "OECD members | 23.66 | 21.08 <0x0A> "
              "Middle East & North Africa | 35.21 | 29 <0x0A> "
              "South Asia | 20.33 | 14.15 <0x0A> ")
