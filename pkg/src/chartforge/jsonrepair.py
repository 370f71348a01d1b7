"""Best-effort recovery of truncated or unbalanced JSON text.

Used by spec parsing in repair mode so that a prediction cut off mid-stream
still yields something the schema-level defaults can work with. Total: always
returns parseable JSON, "{}" in the worst case.
"""
from __future__ import annotations

import json

_OPEN = {"{": "}", "[": "]"}


def _close_open_structures(text: str) -> str:
    stack: list[str] = []
    in_string = False
    escaped = False
    for ch in text:
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
        elif ch in _OPEN:
            stack.append(_OPEN[ch])
        elif ch in ("}", "]"):
            if stack and stack[-1] == ch:
                stack.pop()
    out = text
    if escaped:
        out += "\\"  # dangling escape: make it a literal backslash
    if in_string:
        out += '"'
    return out + "".join(reversed(stack))


def repair_json(text: str) -> str:
    """Return valid JSON text derived from `text` by closing and trimming."""
    try:
        json.loads(text)
        return text
    except (json.JSONDecodeError, TypeError):
        pass
    if not isinstance(text, str):
        return "{}"
    work = text.strip()
    while work:
        candidate = _close_open_structures(work)
        try:
            json.loads(candidate)
            return candidate
        except json.JSONDecodeError:
            work = work[:-1].rstrip()
    return "{}"
