"""Prompt grammar: render edit ops as instructions and parse instructions back.

Every op subtype has one template record (grid toggles and the two column-filter
shapes get their own records) with six surface forms. Form 0 is the base
phrasing. Scaffolding text matches case-insensitively; series and column names
match exactly as they appear in the chart.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import pool
from .errors import AmbiguousPrompt, SchemaViolation, UnknownSubtype, UnknownTarget, UnrecognizedPrompt
from .ops import EditOp
from .spec import ChartSpec
from .table import format_number

N_VARIATIONS = 6

COLOR_WORDS = {"b": "blue", "g": "green", "r": "red", "c": "cyan",
               "m": "magenta", "y": "yellow", "k": "black"}
MARKER_WORDS = {"o": "circle", "^": "triangle", "s": "square", "*": "star", "None": "none"}
HATCH_WORDS = {"xx": "crosshatch", ".": "dots", "*": "stars", "/": "diagonal stripes",
               "\\": "reverse diagonal stripes", "None": "plain"}
FONT_WORDS = {"monospace": "monospace", "Serif": "serif",
              "sans-serif": "sans serif", "Arial Black": "Arial Black"}
SIZE_WORDS = {"x-small": "extra small", "small": "small", "medium": "medium",
              "large": "large", "x-large": "extra large"}
LOC_WORDS = {0: "default position", 1: "upper right", 2: "upper left", 3: "lower left",
             4: "lower right", 8: "lower center", 9: "upper center"}
LINESTYLE_WORDS = {s: s for s in pool.LINESTYLES}

_TICK_SIZE_SUBTYPES = ("x_tick_label_size", "y_tick_label_size")

_NUM = r"-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?"
_SLOT_RE = re.compile(r"\{(\w+)\}")


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    category: str
    subtype: str
    forms: tuple[str, ...]
    implies: tuple = ()


@lru_cache(maxsize=1)
def load_templates() -> tuple[PromptTemplate, ...]:
    raw = json.loads(resources.files("chartforge").joinpath("data/templates.json").read_text("utf-8"))
    return tuple(
        PromptTemplate(r["name"], r["category"], r["subtype"], tuple(r["forms"]),
                       tuple(sorted(r.get("implies", {}).items())))
        for r in raw["records"]
    )


@lru_cache(maxsize=1)
def _by_name() -> dict[str, PromptTemplate]:
    return {t.name: t for t in load_templates()}


def _slot_vocab(slot: str, subtype: str) -> dict[str, object]:
    """Word -> payload value for a closed slot, narrowed to the subtype's pool."""
    if slot == "color":
        return {w: v for v, w in COLOR_WORDS.items()}
    if slot == "marker":
        return {w: v for v, w in MARKER_WORDS.items()}
    if slot == "hatch":
        return {w: v for v, w in HATCH_WORDS.items()}
    if slot == "font":
        return {w: v for v, w in FONT_WORDS.items()}
    if slot == "linestyle":
        return dict(LINESTYLE_WORDS)
    if slot == "loc":
        return {w: v for v, w in LOC_WORDS.items()}
    if slot == "size":
        allowed = pool.TICK_LABEL_SIZES if subtype in _TICK_SIZE_SUBTYPES else pool.FONT_SIZES
        return {SIZE_WORDS[v]: v for v in allowed}
    raise KeyError(slot)


_CLOSED_SLOTS = ("color", "marker", "hatch", "font", "linestyle", "loc", "size")
_PAYLOAD_KEY = {s: s for s in _CLOSED_SLOTS}


# rendering -------------------------------------------------------------------

def _record_for_op(op: EditOp) -> PromptTemplate:
    if op.subtype == "grid_visibility":
        name = "grid_show" if op.payload.get("visible") else "grid_hide"
    elif op.subtype == "range_filter":
        name = "range_filter_columns" if "columns" in op.payload else "range_filter_interval"
    else:
        name = op.subtype
    record = _by_name().get(name)
    if record is None:
        raise UnknownSubtype(f"no phrasing for {op.subtype!r}")
    return record


def _render_slot(slot: str, op: EditOp, record: PromptTemplate) -> str:
    payload = op.payload
    if slot == "series":
        return payload["name"] if record.subtype == "upsert_series" else op.target
    if slot == "serieslist":
        return ", ".join(payload["names"])
    if slot == "columns":
        return ", ".join(payload["columns"])
    if slot == "column":
        return str(payload["column"])
    if slot in ("value", "lo", "hi"):
        return format_number(float(payload[slot if slot != "value" else "value"]))
    if slot == "values":
        return ", ".join(format_number(float(v)) for v in payload["values"])
    vocab = _slot_vocab(slot, record.subtype)
    value = payload.get(_PAYLOAD_KEY[slot])
    for word, v in vocab.items():
        if v == value:
            return word
    raise SchemaViolation(slot, f"cannot phrase {value!r}")


def render_prompt(op: EditOp, variation: int = 0, rng_seed: int | None = None) -> str:
    """Deterministic phrasing of one op. `rng_seed` is reserved; the grammar is
    exhausted by the six fixed variations."""
    if not isinstance(variation, int) or not 0 <= variation < N_VARIATIONS:
        raise SchemaViolation("variation", f"must be an integer in 0..{N_VARIATIONS - 1}")
    record = _record_for_op(op)
    form = record.forms[variation]
    return _SLOT_RE.sub(lambda m: _render_slot(m.group(1), op, record), form)


# parsing -----------------------------------------------------------------

def _alt(words) -> str:
    return "|".join(re.escape(w) for w in sorted(words, key=len, reverse=True))


def _list_pattern(group: str, words) -> str:
    item = f"(?:{_alt(words)})"
    return f"(?P<{group}>{item}(?:, {item})*)"


@lru_cache(maxsize=4096)
def _compile(form: str, names: tuple, headers: tuple, subtype: str, loose: bool) -> re.Pattern:
    parts = []
    for token in re.split(r"(\{\w+\})", form):
        if not token:
            continue
        m = _SLOT_RE.fullmatch(token)
        if m is None:
            parts.append(f"(?i:{re.escape(token)})")
            continue
        slot = m.group(1)
        if slot == "series":
            if loose or subtype == "upsert_series":
                parts.append(r"(?P<series>.+?)")
            else:
                parts.append(f"(?P<series>{_alt(names)})")
        elif slot == "serieslist":
            parts.append(r"(?P<serieslist>.+)" if loose else _list_pattern("serieslist", names))
        elif slot == "columns":
            parts.append(r"(?P<columns>.+)" if loose else _list_pattern("columns", headers))
        elif slot == "column":
            parts.append(r"(?P<column>.+?)")
        elif slot in ("value", "lo", "hi"):
            parts.append(f"(?P<{slot}>{_NUM})")
        elif slot == "values":
            parts.append(f"(?P<values>{_NUM}(?:, {_NUM})*)")
        else:
            parts.append(f"(?P<{slot}>{_alt(_slot_vocab(slot, subtype))})")
    return re.compile("".join(parts))


def _segment(text: str, vocab: tuple) -> list[str] | None:
    """Split a rendered name list back into names: longest-first with backtracking,
    mirroring the alternation order the matcher used."""
    ordered = sorted(vocab, key=len, reverse=True)

    def go(rest: str):
        for name in ordered:
            if rest == name:
                return [name]
            if rest.startswith(name + ", "):
                tail = go(rest[len(name) + 2:])
                if tail is not None:
                    return [name] + tail
        return None

    return go(text)


def _stuck_chunk(text: str, vocab: tuple) -> str:
    ordered = sorted(vocab, key=len, reverse=True)
    rest = text
    while True:
        for name in ordered:
            if rest == name:
                return rest
            if rest.startswith(name + ", "):
                rest = rest[len(name) + 2:]
                break
        else:
            return rest.split(", ")[0]


def _build_op(record: PromptTemplate, gd: dict, names: tuple, headers: tuple) -> EditOp:
    payload: dict = dict(record.implies)
    target = None
    for slot, raw in gd.items():
        if raw is None:
            continue
        if slot == "series":
            if record.subtype == "upsert_series":
                payload["name"] = raw
            else:
                target = raw
        elif slot == "column":
            payload["column"] = raw
        elif slot == "serieslist":
            payload["names"] = tuple(_segment(raw, names))
        elif slot == "columns":
            payload["columns"] = tuple(_segment(raw, headers))
        elif slot == "values":
            payload["values"] = tuple(float(v) for v in raw.split(", "))
        elif slot in ("value", "lo", "hi"):
            payload[slot] = float(raw)
        else:
            payload[_PAYLOAD_KEY[slot]] = _slot_vocab(slot, record.subtype)[raw]
    return EditOp(record.category, record.subtype, target, payload)


def _open_slots(form: str, subtype: str) -> bool:
    slots = set(_SLOT_RE.findall(form))
    if "serieslist" in slots or "columns" in slots:
        return True
    return "series" in slots and subtype != "upsert_series"


def _unknown_name(gd: dict, names: tuple, headers: tuple) -> str:
    series = gd.get("series")
    if series and series not in names:
        return series
    if gd.get("serieslist") and _segment(gd["serieslist"], names) is None:
        return _stuck_chunk(gd["serieslist"], names)
    if gd.get("columns") and _segment(gd["columns"], headers) is None:
        return _stuck_chunk(gd["columns"], headers)
    return series or gd.get("serieslist") or gd.get("columns") or ""


def match_forms(text: str, spec: ChartSpec) -> list[tuple[str, int]]:
    """(record name, form index) for every exact-grammar match; used to prove
    prompts are unambiguous."""
    names = spec.underlying_data.series_names
    headers = spec.underlying_data.column_headers
    out = []
    for record in load_templates():
        for i, form in enumerate(record.forms):
            if _compile(form, names, headers, record.subtype, False).fullmatch(text):
                out.append((record.name, i))
    return out


def parse_prompt(text: str, spec: ChartSpec) -> EditOp:
    """Instruction text -> op, in the context of the chart being edited.

    Raises UnknownTarget when the wording fits but the named series or column
    does not exist, AmbiguousPrompt when two different edits fit, and
    UnrecognizedPrompt otherwise.
    """
    if not isinstance(text, str):
        raise UnrecognizedPrompt("prompt must be text")
    cleaned = text.strip()
    if cleaned.endswith((".", "!")):
        cleaned = cleaned[:-1].rstrip()
    if not cleaned:
        raise UnrecognizedPrompt("empty prompt")
    names = spec.underlying_data.series_names
    headers = spec.underlying_data.column_headers

    ops: list[EditOp] = []
    for record in load_templates():
        for form in record.forms:
            m = _compile(form, names, headers, record.subtype, False).fullmatch(cleaned)
            if m:
                op = _build_op(record, m.groupdict(), names, headers)
                if not any(op == seen for seen in ops):
                    ops.append(op)
    if len(ops) > 1:
        raise AmbiguousPrompt(f"prompt fits {len(ops)} different edits")
    if ops:
        return ops[0]

    # wording fits some template but the named target is not on this chart
    for record in load_templates():
        for form in record.forms:
            if not _open_slots(form, record.subtype):
                continue
            m = _compile(form, names, headers, record.subtype, True).fullmatch(cleaned)
            if m:
                raise UnknownTarget(_unknown_name(m.groupdict(), names, headers))
    raise UnrecognizedPrompt(f"could not understand {text!r}")
