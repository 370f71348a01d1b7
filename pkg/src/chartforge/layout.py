"""Chart geometry: tick placement, band layout, and the drawing scene.

build_scene turns a spec into an ordered list of primitive groups; the SVG
writer and the rasterizer both consume that one scene, so the two outputs can
never disagree about geometry. Group ids are stable: grid, series-{i},
x-axis, y-axis, title, legend.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import pool
from .errors import CanvasTooSmall
from .font import px_height, render_text, rotate_mask
from .spec import ChartSpec, GROUPED_BAR, STACKED_BAR

WIDTH = 800
HEIGHT = 800
MIN_SIZE = 320
PAD = 10
TICK_LEN = 4
MAX_TICKS = 8

GRID_COLOR = "#B0B0B0"
AXIS_COLOR = "#000000"
LEGEND_FONT = "monospace"
LEGEND_PX = 13


@dataclass(frozen=True)
class RectPrim:
    x: float
    y: float
    w: float
    h: float
    fill: str | None
    hatch: str | None = None
    stroke: str | None = None


@dataclass(frozen=True)
class LinePrim:
    x1: float
    y1: float
    x2: float
    y2: float
    color: str
    dash: tuple = ()
    width: int = 1


@dataclass(frozen=True)
class PolylinePrim:
    points: tuple
    color: str
    dash: tuple = ()
    width: int = 2


@dataclass(frozen=True)
class MarkerPrim:
    x: float
    y: float
    kind: str
    color: str
    size: int = 7


@dataclass(frozen=True)
class TextPrim:
    x: float
    y: float  # top edge of the (rotated) text box
    text: str
    font: str
    px: int
    color: str = AXIS_COLOR
    rotation: int = 0
    anchor: str = "start"  # start | middle | end


@dataclass(frozen=True)
class Group:
    gid: str
    prims: tuple


@dataclass(frozen=True)
class Scene:
    width: int
    height: int
    groups: tuple


# ticks -------------------------------------------------------------------

def _snap(q: float) -> tuple[int, int]:
    """(floor, ceil) of q with a tolerance for float dust on exact multiples."""
    r = round(q)
    if abs(q - r) <= 1e-9 * max(1.0, abs(q)):
        return r, r
    return math.floor(q), math.ceil(q)


def _format_tick(mantissa: int, exponent: int) -> str:
    """Exact decimal text of mantissa * 10**exponent."""
    if mantissa == 0:
        return "0"
    sign = "-" if mantissa < 0 else ""
    digits = str(abs(mantissa))
    if exponent >= 0:
        return sign + digits + "0" * exponent
    if len(digits) > -exponent:
        p = len(digits) + exponent
        return sign + digits[:p] + "." + digits[p:]
    return sign + "0." + "0" * (-exponent - len(digits)) + digits


def nice_ticks(lo: float, hi: float, max_ticks: int = MAX_TICKS):
    """Ticks at 1/2/5*10^k multiples: the smallest step that needs at most
    max_ticks of them to bracket [lo, hi]. Returns (values, labels, axis range).
    """
    if not lo < hi:
        hi = lo + 1.0
    k0 = math.floor(math.log10(hi - lo)) - 2
    for k in range(k0, k0 + 10):
        for base in (1, 2, 5):
            step = base * 10.0 ** k
            lo_f, _ = _snap(lo / step)
            _, hi_c = _snap(hi / step)
            if hi_c - lo_f + 1 <= max_ticks:
                values = tuple((m * base) * 10.0 ** k for m in range(lo_f, hi_c + 1))
                labels = tuple(_format_tick(m * base, k) for m in range(lo_f, hi_c + 1))
                return values, labels, values[0], values[-1]
    raise AssertionError("tick search is exhaustive by construction")


def data_range(spec: ChartSpec) -> tuple[float, float]:
    """Raw y extent before snapping to ticks; bars always include zero."""
    table = spec.underlying_data
    flat = [v for s in table.rows for v in s.values if v is not None]
    if not flat:
        return 0.0, 1.0
    if spec.chart_type == STACKED_BAR:
        hi = lo = 0.0
        for j in range(table.n_columns):
            pos = sum(max(s.values[j], 0.0) for s in table.rows if s.values[j] is not None)
            neg = sum(min(s.values[j], 0.0) for s in table.rows if s.values[j] is not None)
            hi = max(hi, pos)
            lo = min(lo, neg)
        return lo, hi
    if spec.is_bar:
        return min(0.0, min(flat)), max(0.0, max(flat))
    return min(flat), max(flat)


# scene construction ----------------------------------------------------------

def _text_box(text: str, font: str, px: int, rotation: int = 0) -> tuple[int, int]:
    if not text:
        return 0, 0
    mask = render_text(text, font, px)
    if rotation:
        mask = rotate_mask(mask, rotation)
    return mask.shape[1], mask.shape[0]


def build_scene(spec: ChartSpec, width: int = WIDTH, height: int = HEIGHT) -> Scene:
    if width < MIN_SIZE or height < MIN_SIZE:
        raise CanvasTooSmall(f"{width}x{height} is below {MIN_SIZE}x{MIN_SIZE}")
    g = spec.global_props
    table = spec.underlying_data

    title_px = px_height(g.chart_title_params.fontsize)
    x_label_px = px_height(g.x_label_params.fontsize)
    y_label_px = px_height(g.y_label_params.fontsize)
    x_tick_px = px_height(g.x_tick_params.labelsize)
    y_tick_px = px_height(g.y_tick_params.labelsize)
    x_tick_font = g.x_tick_params.labelfontfamily
    y_tick_font = g.y_tick_params.labelfontfamily

    _, title_h = _text_box(spec.chart_title, g.chart_title_params.fontname, title_px,
                           g.chart_title_params.rotation)
    title_band = title_h + 8 if spec.chart_title else 0

    y_values, y_labels, axis_lo, axis_hi = nice_ticks(*data_range(spec))

    x_rot = g.x_tick_params.rotation
    x_tick_h = max((_text_box(h, x_tick_font, x_tick_px, x_rot)[1]
                    for h in table.column_headers), default=0)
    x_tick_band = TICK_LEN + 2 + x_tick_h + 4
    x_title_band = x_label_px + 8 if spec.x_axis_title else 0

    y_rot = g.y_tick_params.rotation
    y_tick_w = max((_text_box(lbl, y_tick_font, y_tick_px, y_rot)[0]
                    for lbl in y_labels), default=0)
    y_tick_band = TICK_LEN + 2 + y_tick_w + 4
    y_title_band = y_label_px + 8 if spec.y_axis_title else 0

    px0 = PAD + y_title_band + y_tick_band
    px1 = width - PAD
    py0 = PAD + title_band
    py1 = height - PAD - x_title_band - x_tick_band
    if px1 - px0 < 50 or py1 - py0 < 50:
        raise CanvasTooSmall("decorations leave no room for the plot area")
    plot_w = px1 - px0
    plot_h = py1 - py0

    ncols = table.n_columns
    centers = [px0 + (j + 0.5) * plot_w / ncols for j in range(ncols)]

    def y_px(v: float) -> float:
        return py1 - (v - axis_lo) / (axis_hi - axis_lo) * plot_h

    groups = [
        _grid_group(g, centers, y_values, y_px, px0, px1, py0, py1),
        *_series_groups(spec, centers, y_px, plot_w / ncols),
        _x_axis_group(spec, centers, px0, px1, py1, x_tick_font, x_tick_px, x_rot,
                      x_label_px, x_tick_band, width),
        _y_axis_group(spec, y_values, y_labels, y_px, px0, py0, py1,
                      y_tick_font, y_tick_px, y_rot, y_label_px),
        _title_group(spec, title_px, width),
        _legend_group(spec, px0, px1, py0, py1),
    ]
    return Scene(width, height, tuple(groups))


def _grid_group(g, centers, y_values, y_px, px0, px1, py0, py1) -> Group:
    prims = []
    if g.grid_params.visible:
        dash = pool.DASH_ARRAYS[g.grid_params.linestyle]
        axis = g.grid_params.axis
        if axis in ("y", "both"):
            for v in y_values:
                y = y_px(v)
                prims.append(LinePrim(px0, y, px1, y, GRID_COLOR, dash, 1))
        if axis in ("x", "both"):
            for x in centers:
                prims.append(LinePrim(x, py0, x, py1, GRID_COLOR, dash, 1))
    return Group("grid", tuple(prims))


def _series_groups(spec: ChartSpec, centers, y_px, cat_w) -> list[Group]:
    table = spec.underlying_data
    props = spec.series_props
    n = table.n_series
    groups = []
    if spec.chart_type == GROUPED_BAR:
        bw = 0.8 * cat_w / n
        for i, s in enumerate(table.rows):
            prims = []
            color = pool.COLOR_HEX[props.colors[i]]
            hatch = props.hatches[i]
            for j, v in enumerate(s.values):
                if v is None:
                    continue
                x = centers[j] - 0.4 * cat_w + i * bw
                top, bottom = y_px(max(v, 0.0)), y_px(min(v, 0.0))
                prims.append(RectPrim(x, top, bw, bottom - top, color,
                                      None if hatch == "None" else hatch, AXIS_COLOR))
            groups.append(Group(f"series-{i}", tuple(prims)))
    elif spec.chart_type == STACKED_BAR:
        pos = [0.0] * table.n_columns
        neg = [0.0] * table.n_columns
        series_prims: list[list] = [[] for _ in range(n)]
        for i, s in enumerate(table.rows):
            color = pool.COLOR_HEX[props.colors[i]]
            hatch = props.hatches[i]
            for j, v in enumerate(s.values):
                if v is None:
                    continue
                if v >= 0:
                    lo, hi = pos[j], pos[j] + v
                    pos[j] = hi
                else:
                    hi, lo = neg[j], neg[j] + v
                    neg[j] = lo
                x = centers[j] - 0.4 * cat_w
                top, bottom = y_px(hi), y_px(lo)
                series_prims[i].append(RectPrim(x, top, 0.8 * cat_w, bottom - top, color,
                                                None if hatch == "None" else hatch, AXIS_COLOR))
        groups = [Group(f"series-{i}", tuple(p)) for i, p in enumerate(series_prims)]
    else:
        for i, s in enumerate(table.rows):
            prims = []
            color = pool.COLOR_HEX[props.colors[i]]
            dash = pool.DASH_ARRAYS[props.linestyles[i]]
            run: list = []
            for j, v in enumerate(s.values):
                if v is None:
                    if len(run) > 1:
                        prims.append(PolylinePrim(tuple(run), color, dash, 2))
                    run = []
                else:
                    run.append((centers[j], y_px(v)))
            if len(run) > 1:
                prims.append(PolylinePrim(tuple(run), color, dash, 2))
            if props.markers[i] != "None":
                for j, v in enumerate(s.values):
                    if v is not None:
                        prims.append(MarkerPrim(centers[j], y_px(v), props.markers[i], color))
            groups.append(Group(f"series-{i}", tuple(prims)))
    return groups


def _x_axis_group(spec, centers, px0, px1, py1, tick_font, tick_px, rot,
                  label_px, tick_band, width) -> Group:
    g = spec.global_props
    prims = [LinePrim(px0, py1, px1, py1, AXIS_COLOR)]
    for x, header in zip(centers, spec.underlying_data.column_headers):
        prims.append(LinePrim(x, py1, x, py1 + TICK_LEN, AXIS_COLOR))
        if rot:
            # rotated labels hang with their top-right corner under the tick
            prims.append(TextPrim(x, py1 + TICK_LEN + 2, header, tick_font, tick_px,
                                  rotation=rot, anchor="end"))
        else:
            prims.append(TextPrim(x, py1 + TICK_LEN + 2, header, tick_font, tick_px,
                                  anchor="middle"))
    if spec.x_axis_title:
        prims.append(TextPrim((px0 + px1) / 2, py1 + tick_band + 4, spec.x_axis_title,
                              g.x_label_params.fontname, label_px, anchor="middle"))
    return Group("x-axis", tuple(prims))


def _y_axis_group(spec, y_values, y_labels, y_px, px0, py0, py1,
                  tick_font, tick_px, rot, label_px) -> Group:
    g = spec.global_props
    prims = [LinePrim(px0, py0, px0, py1, AXIS_COLOR)]
    for v, label in zip(y_values, y_labels):
        y = y_px(v)
        prims.append(LinePrim(px0 - TICK_LEN, y, px0, y, AXIS_COLOR))
        prims.append(TextPrim(px0 - TICK_LEN - 2, y - tick_px / 2, label, tick_font,
                              tick_px, rotation=rot, anchor="end"))
    if spec.y_axis_title:
        prims.append(TextPrim(PAD, (py0 + py1) / 2, spec.y_axis_title,
                              g.y_label_params.fontname, label_px, rotation=90,
                              anchor="middle"))
    return Group("y-axis", tuple(prims))


def _title_group(spec, title_px, width) -> Group:
    if not spec.chart_title:
        return Group("title", ())
    p = spec.global_props.chart_title_params
    return Group("title", (TextPrim(width / 2, PAD, spec.chart_title, p.fontname,
                                    title_px, rotation=p.rotation, anchor="middle"),))


def _legend_group(spec, px0, px1, py0, py1) -> Group:
    from .font import text_width

    table = spec.underlying_data
    props = spec.series_props
    names = table.series_names
    n = len(names)
    ncol = min(spec.global_props.legend_params.ncol, n)
    nrow = math.ceil(n / ncol)
    swatch_w, gap, pad = 18, 4, 6
    row_h = max(LEGEND_PX, 12) + 4

    entry_w = [swatch_w + gap + text_width(nm, LEGEND_FONT, LEGEND_PX) + 8 for nm in names]
    col_w = [0] * ncol
    for k, w in enumerate(entry_w):
        c = k % ncol
        col_w[c] = max(col_w[c], w)
    box_w = sum(col_w) + 2 * pad
    box_h = nrow * row_h + 2 * pad

    loc = spec.global_props.legend_params.loc or 1  # 0 delegates to upper right
    margin = 10
    if loc in (1, 4):
        bx = px1 - margin - box_w
    elif loc in (2, 3):
        bx = px0 + margin
    else:  # 8, 9: centered
        bx = (px0 + px1 - box_w) / 2
    if loc in (1, 2, 9):
        by = py0 + margin
    else:  # 3, 4, 8
        by = py1 - margin - box_h

    prims = [RectPrim(bx, by, box_w, box_h, "#FFFFFF", None, AXIS_COLOR)]
    for k, name in enumerate(names):
        r, c = divmod(k, ncol)
        ex = bx + pad + sum(col_w[:c])
        ey = by + pad + r * row_h
        cy = ey + row_h / 2 - 2
        color = pool.COLOR_HEX[props.colors[k]]
        if spec.is_bar:
            hatch = props.hatches[k]
            prims.append(RectPrim(ex, cy - 5, swatch_w, 10, color,
                                  None if hatch == "None" else hatch, AXIS_COLOR))
        else:
            prims.append(PolylinePrim(((ex, cy), (ex + swatch_w, cy)), color,
                                      pool.DASH_ARRAYS[props.linestyles[k]], 2))
            if props.markers[k] != "None":
                prims.append(MarkerPrim(ex + swatch_w / 2, cy, props.markers[k], color))
        prims.append(TextPrim(ex + swatch_w + gap, cy - LEGEND_PX / 2 + 1, name,
                              LEGEND_FONT, LEGEND_PX))
    return Group("legend", tuple(prims))
