"""Scanline rasterizer and PNG writer for drawing scenes.

Everything is integer pixel stamping on a numpy canvas: no antialiasing, no
platform text stack, so identical specs produce identical bytes everywhere.
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .font import render_text, rotate_mask
from .layout import LinePrim, MarkerPrim, PolylinePrim, RectPrim, Scene, TextPrim, build_scene
from .spec import ChartSpec

_PNG_LEVEL = 3  # pinned: determinism matters more than ratio


@dataclass(frozen=True)
class RasterImage:
    pixels: np.ndarray  # (H, W, 3) uint8

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def _rgb(hex_color: str) -> tuple[int, int, int]:
    h = hex_color.lstrip("#")
    return int(h[0:2], 16), int(h[2:4], 16), int(h[4:6], 16)


def _hatch_mask(hatch: str, yy: np.ndarray, xx: np.ndarray) -> np.ndarray:
    # anchored to canvas coordinates so adjacent bars tile continuously
    if hatch == "xx":
        return ((xx + yy) % 6 == 0) | ((xx - yy) % 6 == 0)
    if hatch == "/":
        return (xx + yy) % 6 == 0
    if hatch == "\\":
        return (xx - yy) % 6 == 0
    if hatch == ".":
        return (xx % 6 == 2) & (yy % 6 == 2)
    if hatch == "*":
        mx, my = xx % 8, yy % 8
        return ((mx == 4) & (my >= 2) & (my <= 6)) | ((my == 4) & (mx >= 2) & (mx <= 6))
    return np.zeros_like(xx, dtype=bool)


def _draw_rect(img: np.ndarray, p: RectPrim) -> None:
    h, w = img.shape[:2]
    x0, y0 = int(round(p.x)), int(round(p.y))
    x1, y1 = int(round(p.x + p.w)), int(round(p.y + p.h))
    x0c, y0c = max(x0, 0), max(y0, 0)
    x1c, y1c = min(x1, w), min(y1, h)
    if x1c <= x0c or y1c <= y0c:
        return
    if p.fill:
        img[y0c:y1c, x0c:x1c] = _rgb(p.fill)
    if p.hatch:
        yy, xx = np.mgrid[y0c:y1c, x0c:x1c]
        mask = _hatch_mask(p.hatch, yy, xx)
        img[y0c:y1c, x0c:x1c][mask] = (0, 0, 0)
    if p.stroke:
        color = _rgb(p.stroke)
        if 0 <= y0 < h:
            img[y0, x0c:x1c] = color
        if 0 <= y1 - 1 < h:
            img[y1 - 1, x0c:x1c] = color
        if 0 <= x0 < w:
            img[y0c:y1c, x0] = color
        if 0 <= x1 - 1 < w:
            img[y0c:y1c, x1 - 1] = color


def _segment_pixels(x1: float, y1: float, x2: float, y2: float, dash: tuple):
    steps = int(max(abs(x2 - x1), abs(y2 - y1))) + 1
    t = np.linspace(0.0, 1.0, steps)
    xs = np.rint(x1 + (x2 - x1) * t).astype(np.intp)
    ys = np.rint(y1 + (y2 - y1) * t).astype(np.intp)
    if dash:
        on, off = dash
        keep = (np.arange(steps) % (on + off)) < on
        xs, ys = xs[keep], ys[keep]
    return xs, ys, abs(x2 - x1) >= abs(y2 - y1)


def _stamp(img: np.ndarray, xs: np.ndarray, ys: np.ndarray, color) -> None:
    h, w = img.shape[:2]
    ok = (xs >= 0) & (xs < w) & (ys >= 0) & (ys < h)
    img[ys[ok], xs[ok]] = color


def _draw_segment(img, x1, y1, x2, y2, color, dash, width) -> None:
    xs, ys, horizontal = _segment_pixels(x1, y1, x2, y2, dash)
    rgb = _rgb(color)
    _stamp(img, xs, ys, rgb)
    for k in range(1, width):
        offset = (k + 1) // 2 * (1 if k % 2 else -1)
        if horizontal:
            _stamp(img, xs, ys + offset, rgb)
        else:
            _stamp(img, xs + offset, ys, rgb)


def _marker_mask(kind: str, size: int) -> np.ndarray:
    r = size // 2
    yy, xx = np.mgrid[-r:r + 1, -r:r + 1]
    if kind == "o":
        return xx * xx + yy * yy <= r * r
    if kind == "s":
        return (abs(xx) <= r - 1) & (abs(yy) <= r - 1)
    if kind == "^":
        return (yy >= -r) & (abs(xx) * 2 <= yy + r)
    if kind == "*":
        plus = (xx == 0) | (yy == 0)
        cross = (abs(xx) == abs(yy)) & (abs(xx) <= r - 1)
        return plus | cross
    return np.zeros((size, size), dtype=bool)


def _draw_marker(img: np.ndarray, p: MarkerPrim) -> None:
    mask = _marker_mask(p.kind, p.size)
    _blit_mask(img, mask, int(round(p.x)) - p.size // 2, int(round(p.y)) - p.size // 2,
               _rgb(p.color))


def _blit_mask(img: np.ndarray, mask: np.ndarray, x0: int, y0: int, rgb) -> None:
    h, w = img.shape[:2]
    mh, mw = mask.shape
    sx0, sy0 = max(0, -x0), max(0, -y0)
    dx0, dy0 = max(0, x0), max(0, y0)
    mw_c = min(mw - sx0, w - dx0)
    mh_c = min(mh - sy0, h - dy0)
    if mw_c <= 0 or mh_c <= 0:
        return
    window = mask[sy0:sy0 + mh_c, sx0:sx0 + mw_c]
    img[dy0:dy0 + mh_c, dx0:dx0 + mw_c][window] = rgb


def _draw_text(img: np.ndarray, p: TextPrim) -> None:
    if not p.text:
        return
    mask = render_text(p.text, p.font, p.px)
    if p.rotation:
        mask = rotate_mask(mask, p.rotation)
    h, w = mask.shape
    if p.anchor == "middle":
        x0 = int(round(p.x - w / 2))
    elif p.anchor == "end":
        x0 = int(round(p.x - w))
    else:
        x0 = int(round(p.x))
    _blit_mask(img, mask, x0, int(round(p.y)), _rgb(p.color))


def rasterize(scene: Scene) -> RasterImage:
    img = np.full((scene.height, scene.width, 3), 255, dtype=np.uint8)
    for group in scene.groups:
        for p in group.prims:
            if isinstance(p, RectPrim):
                _draw_rect(img, p)
            elif isinstance(p, LinePrim):
                _draw_segment(img, p.x1, p.y1, p.x2, p.y2, p.color, p.dash, p.width)
            elif isinstance(p, PolylinePrim):
                for (ax, ay), (bx, by) in zip(p.points, p.points[1:]):
                    _draw_segment(img, ax, ay, bx, by, p.color, p.dash, p.width)
            elif isinstance(p, MarkerPrim):
                _draw_marker(img, p)
            elif isinstance(p, TextPrim):
                _draw_text(img, p)
    return RasterImage(img)


def render_raster(spec: ChartSpec, width: int = 800, height: int = 800) -> RasterImage:
    return rasterize(build_scene(spec, width, height))


# PNG -------------------------------------------------------------------------

def _chunk(tag: bytes, payload: bytes) -> bytes:
    body = tag + payload
    return struct.pack(">I", len(payload)) + body + struct.pack(">I", zlib.crc32(body))


def write_png(image: RasterImage) -> bytes:
    """8-bit RGB, filter 0 on every row, fixed zlib level: byte-stable output."""
    px = image.pixels
    h, w = px.shape[:2]
    raw = b"".join(b"\x00" + px[y].tobytes() for y in range(h))
    header = struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0)
    return b"".join((
        b"\x89PNG\r\n\x1a\n",
        _chunk(b"IHDR", header),
        _chunk(b"IDAT", zlib.compress(raw, _PNG_LEVEL)),
        _chunk(b"IEND", b""),
    ))


def render_png(spec: ChartSpec, width: int = 800, height: int = 800) -> bytes:
    return write_png(render_raster(spec, width, height))
