"""Bit-exact JSON formats: rationals travel as "p/q" strings in lowest
terms, infinities as "-inf"/"+inf", so parsing and printing round-trip
byte for byte."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .intervals import BarMultiset, Interval, format_extreal, parse_extreal
from .linalg import Matrix, PrimeField, QQ
from .orientation import (Orientation, orientation_from_json,
                          orientation_to_json)
from .tamerep import DOWN, TameRep, UP, junction_dir, num_cells


class SchemaError(ValueError):
    """Malformed input document."""


def parse_field(obj) -> object:
    if obj is None:
        return QQ
    if isinstance(obj, str):
        if obj == "Q":
            return QQ
        m = re.fullmatch(r"Fp:(\d+)", obj)
        if m:
            return PrimeField(int(m.group(1)))
        raise SchemaError(f"unknown field {obj!r} (use Q or Fp:<p>)")
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("field must be {\"kind\":\"Q\"} or {\"kind\":\"Fp\",\"p\":...}")
    if obj["kind"] == "Q":
        return QQ
    if obj["kind"] == "Fp":
        try:
            return PrimeField(int(obj["p"]))
        except (KeyError, ValueError) as e:
            raise SchemaError(f"bad prime field: {e}")
    raise SchemaError(f"unknown field kind {obj['kind']!r}")


def field_to_json(field) -> dict:
    if field == QQ:
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def tame_to_json(v: TameRep) -> dict:
    field = v.field
    return {
        "grid": [format_extreal(g) for g in v.grid],
        "dims": list(v.dims),
        "maps": [
            {"dir": d, "entries": [[field.format(x) for x in row] for row in m.rows]}
            for m, d in zip(v.maps, v.dirs)
        ],
    }


def tame_from_json(o: Orientation, obj: dict, field) -> TameRep:
    try:
        grid = [Fraction(s) for s in obj["grid"]]
        dims = [int(d) for d in obj["dims"]]
        maps_json = obj["maps"]
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad tame object: {e}")
    if len(dims) != num_cells(grid):
        raise SchemaError(f"tame object needs {num_cells(grid)} dims for {len(grid)} grid points")
    if len(maps_json) != 2 * len(grid):
        raise SchemaError(f"tame object needs {2 * len(grid)} maps")
    maps, dirs = [], []
    for j, mj in enumerate(maps_json):
        d = mj.get("dir")
        if d not in (DOWN, UP):
            raise SchemaError(f"map {j}: dir must be 'down' or 'up'")
        lo, hi = dims[j], dims[j + 1]
        nrows, ncols = (lo, hi) if d == DOWN else (hi, lo)
        entries = mj.get("entries", [])
        if len(entries) != nrows or any(len(r) != ncols for r in entries):
            raise SchemaError(f"map {j}: entries must be {nrows}x{ncols}")
        try:
            rows = [[field.parse(x) for x in r] for r in entries]
        except ValueError as e:
            raise SchemaError(f"map {j}: {e}")
        maps.append(Matrix(field, nrows, ncols, rows))
        dirs.append(d)
    try:
        return TameRep(o, field, grid, dims, maps, dirs)
    except ValueError as e:
        raise SchemaError(str(e))


@dataclass
class Document:
    orientation: Orientation
    field: object
    bars: Optional[BarMultiset] = None
    tame: Optional[TameRep] = None

    def rep(self) -> TameRep:
        if self.tame is not None:
            return self.tame
        from .tamerep import from_bars
        return from_bars(self.orientation, self.bars, self.field)


def parse_document(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(obj, dict):
        raise SchemaError("document must be a JSON object")
    if "orientation" not in obj:
        raise SchemaError("document needs an \"orientation\"")
    try:
        o = orientation_from_json(obj["orientation"])
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad orientation: {e}")
    field = parse_field(obj.get("field"))
    has_bars = "bars" in obj
    has_tame = "tame" in obj
    if has_bars and has_tame:
        raise SchemaError("document must carry exactly one of \"bars\" or \"tame\"")
    doc = Document(o, field)
    if has_bars:
        try:
            doc.bars = BarMultiset.from_json(obj["bars"])
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"bad bars: {e}")
    elif has_tame:
        doc.tame = tame_from_json(o, obj["tame"], field)
    else:
        raise SchemaError("document needs \"bars\" or \"tame\"")
    return doc


def parse_orientation_file(text: str) -> Orientation:
    """Accept either a bare orientation object or a document containing one."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(obj, dict):
        raise SchemaError("orientation file must be a JSON object")
    if "orientation" in obj:
        obj = obj["orientation"]
    try:
        return orientation_from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad orientation: {e}")


_INTERVAL_RE = re.compile(r"\s*([\[\(\{])\s*([^,\s\}]+)\s*(?:,\s*([^,\s\)\]]+)\s*)?([\]\)\}])\s*")


def parse_interval(text: str) -> Interval:
    """Interval literals: "[0,2)", "(-inf,1]", "{3/4}"."""
    m = _INTERVAL_RE.fullmatch(text)
    if not m:
        raise SchemaError(f"cannot parse interval {text!r}")
    lb, lo_s, hi_s, rb = m.groups()
    try:
        if lb == "{":
            if rb != "}" or hi_s is not None:
                raise SchemaError(f"bad point interval {text!r}")
            x = parse_extreal(lo_s)
            return Interval.point(x)
        if hi_s is None:
            raise SchemaError(f"interval {text!r} needs two endpoints")
        lo = parse_extreal(lo_s)
        hi = parse_extreal(hi_s)
        return Interval(lo, hi, lb == "[", rb == "]")
    except SchemaError:
        raise
    except ValueError as e:
        raise SchemaError(f"cannot parse interval {text!r}: {e}")


def document_to_json(doc: Document) -> dict:
    out = {"orientation": orientation_to_json(doc.orientation)}
    if doc.bars is not None:
        out["bars"] = doc.bars.to_json()
    if doc.tame is not None:
        out["tame"] = tame_to_json(doc.tame)
    out["field"] = field_to_json(doc.field)
    return out
