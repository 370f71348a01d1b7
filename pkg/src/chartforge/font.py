"""Bitmap text rendering for the replotter.

Glyphs are the classic public-domain 5x7 LCD set, column-encoded (5 bytes per
glyph, bit 0 = top row). Four faces are derived from the same bitmaps:
monospace keeps the fixed 5-column cell, sans-serif trims empty side columns,
Serif adds baseline feet to stems, Arial Black gets a 1px embolden. Point
sizes map to pixel heights as round(pt * 4 / 3) and glyphs are scaled to that
height by nearest neighbour.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import pool

_BASE_W, _BASE_H = 5, 7

# hex-packed columns for ASCII 0x20..0x7E
_GLYPH_HEX = (
    "0000000000" "00005F0000" "0007000700" "147F147F14" "242A7F2A12"  # space ! " # $
    "2313086462" "3649552250" "0005030000" "001C224100" "0041221C00"  # % & ' ( )
    "14083E0814" "08083E0808" "0050300000" "0808080808" "0060600000"  # * + , - .
    "2010080402" "3E5149453E" "00427F4000" "4261514946" "2141454B31"  # / 0 1 2 3
    "1814127F10" "2745454539" "3C4A494930" "0171090503" "3649494936"  # 4 5 6 7 8
    "064949291E" "0036360000" "0056360000" "0814224100" "1414141414"  # 9 : ; < =
    "0041221408" "0201510906" "324979413E" "7E1111117E" "7F49494936"  # > ? @ A B
    "3E41414122" "7F4141221C" "7F49494941" "7F09090901" "3E4141417A"  # C D E F G
    "7F0808087F" "00417F4100" "2040413F01" "7F08142241" "7F40404040"  # H I J K L
    "7F020C027F" "7F0408107F" "3E4141413E" "7F09090906" "3E5121415E"  # M N O P Q
    "7F09192946" "4649494931" "01017F0101" "3F4040403F" "1F2040201F"  # R S T U V
    "3F4038403F" "6314081463" "0708700807" "6151494543" "007F414100"  # W X Y Z [
    "0204081020" "0041417F00" "0402010204" "4040404040" "0001020400"  # \ ] ^ _ `
    "2054545478" "7F48444438" "3844444420" "384444487F" "3854545418"  # a b c d e
    "087E090102" "0C5252523E" "7F08040478" "00447D4000" "2040443D00"  # f g h i j
    "7F10284400" "00417F4000" "7C04180478" "7C08040478" "3844444438"  # k l m n o
    "7C14141408" "081414187C" "7C08040408" "4854545420" "043F444020"  # p q r s t
    "3C4040207C" "1C2040201C" "3C4030403C" "4428102844" "0C5050503C"  # u v w x y
    "44645C4C44" "0008364100" "00007F0000" "0041360800" "0204040802"  # z { | } ~
)

_FALLBACK = bytes((0x7F, 0x41, 0x41, 0x41, 0x7F))  # hollow box for anything else


@lru_cache(maxsize=1)
def _glyph_columns() -> dict[str, bytes]:
    out = {}
    for i in range(0x20, 0x7F):
        hx = _GLYPH_HEX[(i - 0x20) * 10:(i - 0x20) * 10 + 10]
        out[chr(i)] = bytes.fromhex(hx)
    return out


def px_height(fontsize: str) -> int:
    return round(pool.FONT_PT[fontsize] * 4 / 3)


def _base_bitmap(ch: str) -> np.ndarray:
    cols = _glyph_columns().get(ch, _FALLBACK)
    bits = np.zeros((_BASE_H, _BASE_W), dtype=bool)
    for x, col in enumerate(cols):
        for y in range(_BASE_H):
            if col >> y & 1:
                bits[y, x] = True
    return bits


def _face_bitmap(ch: str, font_name: str) -> tuple[np.ndarray, bool]:
    """(bitmap, proportional) at base resolution after face transforms."""
    bits = _base_bitmap(ch)
    if font_name == "Serif":
        # feet: widen every stem that touches the baseline
        feet = bits.copy()
        bottom = bits[-1]
        feet[-1, :-1] |= bottom[1:]
        feet[-1, 1:] |= bottom[:-1]
        return feet, True
    if font_name == "Arial Black":
        wide = np.zeros((_BASE_H, _BASE_W + 1), dtype=bool)
        wide[:, :-1] = bits
        wide[:, 1:] |= bits
        return wide, True
    return bits, font_name == "sans-serif"


def _trim(bits: np.ndarray) -> np.ndarray:
    used = bits.any(axis=0)
    if not used.any():
        return bits[:, :2]  # keep spaces two columns wide
    lo = int(np.argmax(used))
    hi = len(used) - int(np.argmax(used[::-1]))
    return bits[:, lo:hi]


def _scale(bits: np.ndarray, height: int) -> np.ndarray:
    h, w = bits.shape
    width = max(1, round(w * height / h))
    ys = (np.arange(height) * h) // height
    xs = (np.arange(width) * w) // width
    return bits[np.ix_(ys, xs)]


@lru_cache(maxsize=8192)
def _glyph(ch: str, font_name: str, height: int) -> np.ndarray:
    bits, proportional = _face_bitmap(ch, font_name)
    if proportional:
        bits = _trim(bits)
    scaled = _scale(bits, height)
    scaled.setflags(write=False)
    return scaled


def render_text(text: str, font_name: str, height: int) -> np.ndarray:
    """Boolean mask (height x width) of the rendered line."""
    if height < 1:
        height = 1
    gap = max(1, height // 7)
    glyphs = [_glyph(ch, font_name, height) for ch in text]
    if not glyphs:
        return np.zeros((height, 1), dtype=bool)
    width = sum(g.shape[1] for g in glyphs) + gap * (len(glyphs) - 1)
    out = np.zeros((height, width), dtype=bool)
    x = 0
    for g in glyphs:
        out[:, x:x + g.shape[1]] = g
        x += g.shape[1] + gap
    return out


def text_width(text: str, font_name: str, height: int) -> int:
    return render_text(text, font_name, height).shape[1]


def rotate_mask(mask: np.ndarray, degrees: int) -> np.ndarray:
    """Nearest-neighbour rotation counterclockwise; only 0/45/90 are used."""
    if degrees % 360 == 0:
        return mask
    if degrees % 360 == 90:
        return np.rot90(mask)
    theta = np.deg2rad(degrees % 360)
    h, w = mask.shape
    cos, sin = np.cos(theta), np.sin(theta)
    out_w = int(np.ceil(abs(w * cos) + abs(h * sin)))
    out_h = int(np.ceil(abs(w * sin) + abs(h * cos)))
    cy, cx = (h - 1) / 2, (w - 1) / 2
    oy, ox = (out_h - 1) / 2, (out_w - 1) / 2
    yy, xx = np.mgrid[0:out_h, 0:out_w]
    # inverse map: rotate output coords clockwise back onto the source
    sx = (xx - ox) * cos + (yy - oy) * sin + cx
    sy = -(xx - ox) * sin + (yy - oy) * cos + cy
    sxi = np.rint(sx).astype(int)
    syi = np.rint(sy).astype(int)
    ok = (sxi >= 0) & (sxi < w) & (syi >= 0) & (syi < h)
    out = np.zeros((out_h, out_w), dtype=bool)
    out[ok] = mask[syi[ok], sxi[ok]]
    return out
