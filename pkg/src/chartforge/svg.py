"""SVG 1.1 writer for drawing scenes.

Documents are line-oriented and group order is fixed, so two specs differing
in one visual attribute produce documents differing only inside the owning
group. Hatches become <pattern> defs, emitted only when used.
"""
from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .layout import LinePrim, MarkerPrim, PolylinePrim, RectPrim, Scene, TextPrim, build_scene
from .spec import ChartSpec

_HATCH_SLUG = {"xx": "cross", ".": "dot", "*": "star", "/": "fwd", "\\": "back"}

_FONT_FAMILY = {
    "monospace": "monospace",
    "Serif": "serif",
    "sans-serif": "sans-serif",
    "Arial Black": "'Arial Black', sans-serif",
}

_PATTERN_BODY = {
    "cross": '<path d="M0 0L6 6M6 0L0 6" stroke="#000000" stroke-width="1"/>',
    "dot": '<circle cx="2" cy="2" r="1" fill="#000000"/>',
    "star": '<path d="M4 2L4 6M2 4L6 4M2.5 2.5L5.5 5.5M5.5 2.5L2.5 5.5" stroke="#000000" stroke-width="1"/>',
    "fwd": '<path d="M0 6L6 0" stroke="#000000" stroke-width="1"/>',
    "back": '<path d="M0 0L6 6" stroke="#000000" stroke-width="1"/>',
}


def _f(v: float) -> str:
    out = f"{v:.2f}".rstrip("0").rstrip(".")
    return out if out != "-0" else "0"


def _dash_attr(dash: tuple) -> str:
    if not dash:
        return ""
    return f' stroke-dasharray="{dash[0]} {dash[1]}"'


def _rect(p: RectPrim) -> list[str]:
    base = f'<rect x="{_f(p.x)}" y="{_f(p.y)}" width="{_f(p.w)}" height="{_f(p.h)}"'
    out = []
    fill = p.fill or "none"
    stroke = f' stroke="{p.stroke}"' if p.stroke else ""
    out.append(f'{base} fill="{fill}"{stroke}/>')
    if p.hatch:
        slug = _HATCH_SLUG[p.hatch]
        out.append(f'{base} fill="url(#hatch-{slug})"/>')
    return out


def _line(p: LinePrim) -> list[str]:
    return [f'<line x1="{_f(p.x1)}" y1="{_f(p.y1)}" x2="{_f(p.x2)}" y2="{_f(p.y2)}"'
            f' stroke="{p.color}" stroke-width="{p.width}"{_dash_attr(p.dash)}/>']


def _polyline(p: PolylinePrim) -> list[str]:
    pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in p.points)
    return [f'<polyline points="{pts}" fill="none" stroke="{p.color}"'
            f' stroke-width="{p.width}"{_dash_attr(p.dash)}/>']


def _marker(p: MarkerPrim) -> list[str]:
    x, y, r = p.x, p.y, p.size / 2
    if p.kind == "o":
        return [f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" fill="{p.color}"/>']
    if p.kind == "s":
        return [f'<rect x="{_f(x - r + 1)}" y="{_f(y - r + 1)}" width="{_f(2 * r - 2)}"'
                f' height="{_f(2 * r - 2)}" fill="{p.color}"/>']
    if p.kind == "^":
        pts = f"{_f(x)},{_f(y - r)} {_f(x - r)},{_f(y + r)} {_f(x + r)},{_f(y + r)}"
        return [f'<polygon points="{pts}" fill="{p.color}"/>']
    if p.kind == "*":
        return [f'<path d="M{_f(x)} {_f(y - r)}L{_f(x)} {_f(y + r)}'
                f'M{_f(x - r)} {_f(y)}L{_f(x + r)} {_f(y)}'
                f'M{_f(x - r + 1)} {_f(y - r + 1)}L{_f(x + r - 1)} {_f(y + r - 1)}'
                f'M{_f(x + r - 1)} {_f(y - r + 1)}L{_f(x - r + 1)} {_f(y + r - 1)}"'
                f' stroke="{p.color}" stroke-width="1" fill="none"/>']
    return []


def _text(p: TextPrim) -> list[str]:
    baseline = p.y + p.px * 0.8
    transform = ""
    if p.rotation:
        transform = f' transform="rotate({-p.rotation} {_f(p.x)} {_f(p.y)})"'
    return [f'<text x="{_f(p.x)}" y="{_f(baseline)}" font-family={quoteattr(_FONT_FAMILY[p.font])}'
            f' font-size="{p.px}px" fill="{p.color}" text-anchor="{p.anchor}"{transform}>'
            f'{escape(p.text)}</text>']


def scene_to_svg(scene: Scene) -> str:
    used_hatches = sorted({
        _HATCH_SLUG[p.hatch]
        for g in scene.groups for p in g.prims
        if isinstance(p, RectPrim) and p.hatch
    })
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{scene.width}"'
        f' height="{scene.height}" viewBox="0 0 {scene.width} {scene.height}">',
    ]
    if used_hatches:
        lines.append("<defs>")
        for slug in used_hatches:
            lines.append(f'<pattern id="hatch-{slug}" width="6" height="6"'
                         f' patternUnits="userSpaceOnUse">{_PATTERN_BODY[slug]}</pattern>')
        lines.append("</defs>")
    lines.append(f'<rect x="0" y="0" width="{scene.width}" height="{scene.height}" fill="#FFFFFF"/>')
    for group in scene.groups:
        lines.append(f'<g id="{group.gid}">')
        for p in group.prims:
            if isinstance(p, RectPrim):
                lines.extend(_rect(p))
            elif isinstance(p, LinePrim):
                lines.extend(_line(p))
            elif isinstance(p, PolylinePrim):
                lines.extend(_polyline(p))
            elif isinstance(p, MarkerPrim):
                lines.extend(_marker(p))
            elif isinstance(p, TextPrim):
                lines.extend(_text(p))
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(spec: ChartSpec, width: int = 800, height: int = 800) -> str:
    return scene_to_svg(build_scene(spec, width, height))
