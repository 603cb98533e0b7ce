"""JSON cover documents.

A document looks like::

    {
      "characteristic": 3,
      "lambda": [2],
      "base_genus": 0,
      "branch_points": [
        {"degree": 1, "nu": [1], "fixed_chars": [], "n": 2}
      ]
    }

``lambda`` lists the cyclic factor orders of the character group, ``nu`` is a
residue vector and ``fixed_chars`` generates the subgroup of characters that
are trivial on the stabilizer.  ``n`` is optional and defaults to the index
of that subgroup; a stated value that disagrees is reported by validation.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .abelian import FinAbGroup, subgroup_generate
from .coverinv import BranchPoint, CoverData

_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}

SCHEMA = {
    "type": "object",
    "required": ["characteristic", "lambda", "base_genus", "branch_points"],
    "additionalProperties": False,
    "properties": {
        "description": {"type": "string"},
        "characteristic": {"type": "integer", "minimum": 2},
        "lambda": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "base_genus": {"type": "integer", "minimum": 0},
        "branch_points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "nu", "fixed_chars"],
                "additionalProperties": False,
                "properties": {
                    "degree": {"type": "integer"},
                    "nu": _INT_VECTOR,
                    "fixed_chars": {"type": "array", "items": _INT_VECTOR},
                    "n": {"type": "integer"},
                },
            },
        },
    },
}


class DocumentError(ValueError):
    def __init__(self, message: str, line=None, where=None, path=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.where = where
        self.path = path

    def __str__(self):
        prefix = f"line {self.line}: " if self.line is not None else ""
        if self.where:
            prefix += f"at {self.where}: "
        return prefix + self.message


def _where(path) -> str:
    out = "$"
    for key in path:
        out += f"[{key}]" if isinstance(key, int) else f".{key}"
    return out


_DECODER = json.JSONDecoder()


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t\r\n":
        pos += 1
    return pos


def locate(text: str, path) -> int | None:
    """Line number where the value at ``path`` starts, or None if not found."""
    pos = _skip_ws(text, 0)
    for key in path:
        if pos >= len(text):
            return None
        if isinstance(key, int) and text[pos] == "[":
            pos = _skip_ws(text, pos + 1)
            for _ in range(key):
                _, pos = _DECODER.raw_decode(text, pos)
                pos = _skip_ws(text, pos)
                if text[pos] != ",":
                    return None
                pos = _skip_ws(text, pos + 1)
        elif isinstance(key, str) and text[pos] == "{":
            pos = _skip_ws(text, pos + 1)
            while True:
                if text[pos] == "}":
                    return None
                name, pos = _DECODER.raw_decode(text, pos)
                pos = _skip_ws(text, _skip_ws(text, pos) + 1)
                if name == key:
                    break
                _, pos = _DECODER.raw_decode(text, pos)
                pos = _skip_ws(text, pos)
                if text[pos] != ",":
                    return None
                pos = _skip_ws(text, pos + 1)
        else:
            return None
    return text.count("\n", 0, pos) + 1


def _vector(group: FinAbGroup, values, path):
    if len(values) != len(group.orders):
        raise DocumentError(
            f"expected {len(group.orders)} residues, got {len(values)}",
            where=_where(path),
            path=path,
        )
    return group(tuple(int(v) for v in values))


def cover_from_dict(doc: dict) -> CoverData:
    errors = sorted(
        jsonschema.Draft202012Validator(SCHEMA).iter_errors(doc),
        key=lambda e: list(map(str, e.absolute_path)),
    )
    if errors:
        err = errors[0]
        raise DocumentError(err.message, where=_where(err.absolute_path), path=list(err.absolute_path))
    try:
        group = FinAbGroup(tuple(doc["lambda"]))
    except ValueError as exc:
        raise DocumentError(str(exc), where="$.lambda", path=["lambda"]) from None
    points = []
    for i, entry in enumerate(doc["branch_points"]):
        nu = _vector(group, entry["nu"], ["branch_points", i, "nu"])
        gens = [
            _vector(group, g, ["branch_points", i, "fixed_chars", j])
            for j, g in enumerate(entry["fixed_chars"])
        ]
        K = subgroup_generate(group, gens)
        n = int(entry.get("n", K.index))
        points.append(BranchPoint(int(entry["degree"]), nu, K, n))
    try:
        return CoverData(int(doc["characteristic"]), group, int(doc["base_genus"]), tuple(points))
    except ValueError as exc:
        raise DocumentError(str(exc), where="$.characteristic", path=["characteristic"]) from None


def parse_cover(text: str) -> CoverData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, line=exc.lineno) from None
    try:
        return cover_from_dict(doc)
    except DocumentError as exc:
        if exc.line is None and exc.path is not None:
            exc.line = locate(text, exc.path)
        raise


def load_cover(path) -> CoverData:
    return parse_cover(Path(path).read_text(encoding="utf-8"))


def cover_to_dict(c: CoverData) -> dict:
    return {
        "characteristic": c.characteristic,
        "lambda": list(c.group.orders),
        "base_genus": c.base_genus,
        "branch_points": [
            {
                "degree": y.degree,
                "nu": list(y.nu.residues),
                "fixed_chars": [list(g.residues) for g in y.fixed_chars.generators],
                "n": y.n,
            }
            for y in c.branch
        ],
    }


def dump_cover(c: CoverData) -> str:
    return json.dumps(cover_to_dict(c), indent=2) + "\n"
