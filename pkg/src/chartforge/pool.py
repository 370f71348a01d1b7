"""Property pool: every enumerated plotting attribute, its legal values, editability.

Also holds the fixed rendering lexicons (hex colors, dash arrays, point sizes)
so the replotter and the prompt layer share one source of truth.
"""
from __future__ import annotations

from dataclasses import dataclass

CHART_TYPES = ("line", "grouped_vertical_bar", "stacked_vertical_bar")
BAR_TYPES = ("grouped_vertical_bar", "stacked_vertical_bar")

COLORS = ("b", "g", "r", "c", "m", "y", "k")
MARKERS = ("o", "^", "s", "*", "None")
LINESTYLES = (
    "solid",
    "dashed",
    "dotted",
    "dense dotted",
    "loose dotted",
    "dense dashed",
    "loose dashed",
)
HATCHES = ("xx", ".", "*", "/", "\\", "None")
FONT_NAMES = ("monospace", "Serif", "sans-serif", "Arial Black")
FONT_SIZES = ("medium", "large", "x-large")
TICK_LABEL_SIZES = ("x-small", "small", "medium", "large")
LEGEND_LOCS = (0, 1, 2, 3, 4, 8, 9)
LEGEND_NCOLS = (1, 2, 3)
TICK_ROTATIONS = (0, 45)
GRID_VISIBILITY = (True, False)
GRID_AXES = ("both", "x", "y")
GRID_LINESTYLES = ("solid", "dashed")

MAX_SERIES = len(COLORS)  # distinct-color sampling caps series count


@dataclass(frozen=True)
class PoolEntry:
    scope: str  # "line" | "bar" | "global"
    key: str
    values: tuple
    editable: bool


PROPERTY_POOL: tuple[PoolEntry, ...] = (
    PoolEntry("line", "color", COLORS, True),
    PoolEntry("line", "marker", MARKERS, True),
    PoolEntry("line", "linestyle", LINESTYLES, True),
    PoolEntry("bar", "hatch", HATCHES, True),
    PoolEntry("bar", "color", COLORS, True),
    PoolEntry("global", "x_label_fontname", FONT_NAMES, True),
    PoolEntry("global", "x_label_fontsize", FONT_SIZES, True),
    PoolEntry("global", "y_label_fontname", FONT_NAMES, True),
    PoolEntry("global", "y_label_fontsize", FONT_SIZES, True),
    PoolEntry("global", "legend_loc", LEGEND_LOCS, True),
    PoolEntry("global", "legend_ncol", LEGEND_NCOLS, False),
    PoolEntry("global", "title_fontname", FONT_NAMES, True),
    PoolEntry("global", "title_fontsize", FONT_SIZES, True),
    PoolEntry("global", "x_tick_labelsize", TICK_LABEL_SIZES, True),
    PoolEntry("global", "x_tick_rotation", TICK_ROTATIONS, False),
    PoolEntry("global", "y_tick_labelsize", TICK_LABEL_SIZES, True),
    PoolEntry("global", "grid_visible", GRID_VISIBILITY, True),
    PoolEntry("global", "grid_axis", GRID_AXES, False),
    PoolEntry("global", "grid_linestyle", GRID_LINESTYLES, False),
)

_INDEX = {(e.scope, e.key): e for e in PROPERTY_POOL}


def pool_entry(scope: str, key: str) -> PoolEntry:
    return _INDEX[(scope, key)]


def pool_values(scope: str, key: str) -> tuple:
    return _INDEX[(scope, key)].values


def is_editable(scope: str, key: str) -> bool:
    return _INDEX[(scope, key)].editable


def in_pool(scope: str, key: str, value) -> bool:
    entry = _INDEX.get((scope, key))
    return entry is not None and value in entry.values


# rendering lexicons

COLOR_HEX = {
    "b": "#0000FF",
    "g": "#008000",
    "r": "#FF0000",
    "c": "#00BFBF",
    "m": "#BF00BF",
    "y": "#BFBF00",
    "k": "#000000",
}

# on/off pixel run lengths; empty means solid
DASH_ARRAYS = {
    "solid": (),
    "dashed": (6, 6),
    "dotted": (1, 5),
    "dense dotted": (1, 1),
    "loose dotted": (1, 10),
    "dense dashed": (5, 1),
    "loose dashed": (5, 10),
}

FONT_PT = {
    "x-small": 6.9,
    "small": 8.3,
    "medium": 10.0,
    "large": 12.0,
    "x-large": 14.4,
}
