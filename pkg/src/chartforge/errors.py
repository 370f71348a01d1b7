"""Exception taxonomy shared by every module; errors render as single-line JSON."""
from __future__ import annotations

import json


class ChartForgeError(Exception):
    """Base class. `kind` is the class name; `details` are machine-readable extras."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_json(self) -> str:
        payload = {"kind": self.kind, "message": self.message}
        payload.update(self.details)
        return json.dumps(payload, ensure_ascii=False)


# chart-spec parsing and validation

class MalformedJson(ChartForgeError):
    """Input text is not parseable JSON."""


class SchemaViolation(ChartForgeError):
    """Well-formed JSON that does not fit the chart-spec schema."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path or '<root>'}: {reason}", path=path, reason=reason)
        self.path = path
        self.reason = reason


class PoolViolation(ChartForgeError):
    """An enumerated property value that is not in the pool for its key."""

    def __init__(self, key: str, value):
        super().__init__(f"{key}: {value!r} not allowed", key=key, value=value)
        self.key = key
        self.value = value


class RaggedRow(ChartForgeError):
    """Table rows with unequal cell counts."""


class EmptyTable(ChartForgeError):
    """Table with no rows or no columns."""


class DuplicateSeries(ChartForgeError):
    """Two rows (or two columns) sharing a name."""


# prompt DSL

class UnknownSubtype(ChartForgeError):
    """Edit op subtype absent from the template registry."""


class UnrecognizedPrompt(ChartForgeError):
    """Prompt text that matches no template."""


class UnknownTarget(ChartForgeError):
    """Prompt names a series/column that the context spec does not contain."""

    def __init__(self, name: str):
        super().__init__(f"unknown target: {name!r}", name=name)
        self.name = name


class AmbiguousPrompt(ChartForgeError):
    """Prompt text that parses to more than one distinct op."""


# edit engine

class TargetMissing(ChartForgeError):
    """Edit target (series, column, or attribute) absent from the spec."""


class EmptyResult(ChartForgeError):
    """A filter that would leave no rows or no columns."""


class InvalidForChartType(ChartForgeError):
    """Operation incompatible with the chart type (e.g. negatives into stacked bars)."""


# layout / rendering

class CanvasTooSmall(ChartForgeError):
    """Canvas cannot fit the fixed margins."""


# metrics

class DimensionMismatch(ChartForgeError):
    """Images of different shapes compared."""


class EmptyBatch(ChartForgeError):
    """An aggregate over zero samples."""


# synthesizer

class TooManySeries(ChartForgeError):
    """More series than distinct pool colors; table is truncated instead."""


class InvalidTable(ChartForgeError):
    """Source table file that cannot be ingested."""


# eval harness

class ProtocolViolation(ChartForgeError):
    """External predictor wrote something that is not a valid response line."""


class PredictorTimeout(ChartForgeError):
    """External predictor failed to answer within the per-sample budget."""

    @property
    def kind(self) -> str:
        return "Timeout"
