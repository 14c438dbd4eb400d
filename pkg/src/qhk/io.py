"""Canonical JSON for quandles and Alexander specs.

Serialization is deterministic: fixed key order, one table row per line,
trailing newline.  Reading then writing a canonical file reproduces it
byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .alexander import AlexanderSpec, SpecError
from .quandle import FiniteQuandle, validate

SCHEMA = 1


class ParseError(ValueError):
    """Input is not well-formed JSON of the expected shape."""


def _dump_rows(rows) -> str:
    return "[\n" + ",\n".join("    " + json.dumps(list(r)) for r in rows) + "\n  ]"


def quandle_to_json(q: FiniteQuandle) -> str:
    return ('{\n  "schema": %d,\n  "order": %d,\n  "table": %s\n}\n'
            % (SCHEMA, q.order, _dump_rows(q.table)))


def spec_to_json(spec: AlexanderSpec) -> str:
    return ('{\n  "schema": %d,\n  "factors": %s,\n  "t": %s\n}\n'
            % (SCHEMA, json.dumps(list(spec.factors)), _dump_rows(spec.t)))


def _load(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object")
    schema = obj.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ParseError(f"unsupported schema {schema!r}")
    return obj


def parse_table(text: str) -> list[list[int]]:
    """The raw table of a quandle file, shape-checked but not axiom-checked."""
    obj = _load(text)
    if "table" not in obj:
        raise ParseError("missing 'table'")
    table = obj["table"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ParseError("'table' must be a list of rows")
    for row in table:
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ParseError(f"table entry {v!r} is not an integer")
    order = obj.get("order", len(table))
    if order != len(table):
        raise ParseError(f"'order' is {order} but the table has {len(table)} rows")
    if any(len(r) != len(table) for r in table):
        raise ParseError("table is not square")
    if table and any(not 0 <= v < len(table) for r in table for v in r):
        raise ParseError("table entry out of range")
    if not table:
        raise ParseError("empty table")
    return table


def quandle_from_json(text: str) -> FiniteQuandle:
    """Parse and validate; axiom failures raise ``QuandleAxiomError``."""
    return validate(parse_table(text))


def spec_from_json(text: str) -> AlexanderSpec:
    obj = _load(text)
    try:
        factors = tuple(obj["factors"])
        t = tuple(tuple(r) for r in obj["t"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed spec: {exc}") from exc
    if not all(isinstance(v, int) for v in factors) or not all(isinstance(v, int) for r in t for v in r):
        raise ParseError("spec entries must be integers")
    return AlexanderSpec(factors, t)


def read_quandle(path: str | Path) -> FiniteQuandle:
    return quandle_from_json(_read(path))


def read_spec(path: str | Path) -> AlexanderSpec:
    return spec_from_json(_read(path))


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


__all__ = [
    "ParseError",
    "SpecError",
    "quandle_to_json",
    "spec_to_json",
    "quandle_from_json",
    "spec_from_json",
    "parse_table",
    "read_quandle",
    "read_spec",
]
