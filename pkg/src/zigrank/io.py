"""Explicit-module JSON files and input auto-detection.

Module file::

    {"field": 2, "grid": {"cols": [[0, 0, 1], [1, 0, 1]]},
     "dims": {"0,0": 1, ...}, "maps": {"0,0->1,0": [[1]], ...}}

Map keys must be cover relations of the grid.  Loading validates shapes and
commutativity and names the first square that fails.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .exceptions import ParseError, ValidationError
from .filtration import Bifiltration, parse_bifiltration
from .grid import GridInterval, GridPoint
from .module import ExplicitModule

__all__ = [
    "module_to_json",
    "module_from_json",
    "dumps_module",
    "loads_module",
    "load_module",
    "save_module",
    "load_input",
    "default_field",
    "FIELD_ENV",
]

FIELD_ENV = "ZIGRANK_FIELD"


def default_field() -> int:
    """Field modulus from the ``ZIGRANK_FIELD`` environment variable, else 2."""
    raw = os.environ.get(FIELD_ENV)
    if not raw:
        return 2
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{FIELD_ENV}={raw!r} is not an integer") from None


def _point_key(p: GridPoint) -> str:
    return f"{p.x},{p.y}"


def _parse_point(s: str) -> GridPoint:
    parts = s.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad point key {s!r}, expected 'x,y'")
    try:
        return GridPoint(int(parts[0]), int(parts[1]))
    except ValueError:
        raise ParseError(f"bad point key {s!r}, expected integers") from None


def module_to_json(M: ExplicitModule) -> dict:
    return {
        "field": M.field,
        "grid": M.domain.to_json(),
        "dims": {_point_key(p): M.dims[p] for p in M.nodes},
        "maps": {
            f"{_point_key(a)}->{_point_key(b)}": m.tolist()
            for (a, b), m in sorted(M.arrows.items())
            if m.size
        },
    }


def module_from_json(obj: dict, default_field: int | None = None) -> ExplicitModule:
    if not isinstance(obj, dict):
        raise ParseError("module file must hold a JSON object")
    for key in ("grid", "dims"):
        if key not in obj:
            raise ParseError(f"module file lacks the {key!r} entry")
    field = obj.get("field", default_field if default_field is not None else 2)
    try:
        domain = GridInterval.from_json(obj["grid"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad grid entry: {exc}") from None
    dims = {}
    for k, v in obj["dims"].items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParseError(f"dimension at {k!r} is not an integer")
        dims[_parse_point(k)] = v
    maps = {}
    for k, m in obj.get("maps", {}).items():
        if "->" not in k:
            raise ParseError(f"bad map key {k!r}, expected 'x,y->x,y'")
        a, b = k.split("->", 1)
        try:
            mat = np.array(m, dtype=np.int64)
        except (ValueError, TypeError):
            raise ParseError(f"map {k!r} is not an integer matrix") from None
        if mat.ndim == 1 and mat.size == 0:
            mat = mat.reshape(0, 0)
        maps[(_parse_point(a), _parse_point(b))] = mat
    return ExplicitModule(domain, dims, maps, int(field))


def dumps_module(M: ExplicitModule) -> str:
    return json.dumps(module_to_json(M), sort_keys=True)


def loads_module(text: str, default_field: int | None = None) -> ExplicitModule:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}") from None
    return module_from_json(obj, default_field)


def load_module(path, default_field: int | None = None) -> ExplicitModule:
    return loads_module(Path(path).read_text(encoding="utf-8"), default_field)


def save_module(M: ExplicitModule, path):
    Path(path).write_text(dumps_module(M) + "\n", encoding="utf-8")


def load_input(path, field: int | None = None) -> ExplicitModule | Bifiltration:
    """Read either a bifiltration text file or an explicit-module JSON file.

    The kind is decided by the first non-comment, non-blank line: ``{`` opens
    a module, ``grid`` a bifiltration.
    """
    text = Path(path).read_text(encoding="utf-8")
    fld = default_field() if field is None else field
    for line in text.splitlines():
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("{"):
            return loads_module(text, fld)
        if s.startswith("grid"):
            return parse_bifiltration(text, fld)
        raise ParseError(f"cannot tell the input kind from {s[:30]!r}")
    raise ParseError("no simplices")
