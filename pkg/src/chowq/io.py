"""JSON reading and writing with schema checks.

Integers are written as decimal strings; on input both numbers and strings
are accepted.  Output is sorted and indented so identical inputs give
identical bytes.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .errors import ParseError
from .lattice import IntMat
from .laurent import LaurentPoly
from .polyhedral import Fan

SCHEMA_VERSION = 1
COMMANDS = ("gale", "gkz-rays", "quotient-fan", "transfer", "coxring", "tropres")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         line=exc.lineno) from None


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return loads(text, path)


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files("chowq").joinpath("schemas", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def field_path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def validate(obj, name: str, source: str = "<input>") -> None:
    """Raise ParseError naming the offending field if obj breaks the schema."""
    validator = jsonschema.Draft202012Validator(schema(name))
    err = jsonschema.exceptions.best_match(validator.iter_errors(obj))
    if err is not None:
        where = field_path(err.absolute_path)
        raise ParseError(f"{source}: field {where}: {err.message}", field=where)


# ---------------------------------------------------------------------------
# decoding the loose input forms


def to_int(x, where: str = "") -> int:
    try:
        return int(str(x).strip()) if isinstance(x, str) else int(x)
    except ValueError:
        raise ParseError(f"field {where}: {x!r} is not an integer", field=where) from None


def read_intmat(obj, where: str) -> IntMat:
    """A matrix given as a list of rows or as {"rows", "cols", "data"}."""
    if isinstance(obj, list):
        rows, declared = obj, (None, None)
    else:
        rows = obj["data"]
        declared = (obj.get("rows"), obj.get("cols"))
    data = [[to_int(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    nrows = to_int(declared[0], f"{where}.rows") if declared[0] is not None else len(data)
    if declared[1] is not None:
        ncols = to_int(declared[1], f"{where}.cols")
    elif data:
        ncols = len(data[0])
    else:
        raise ParseError(f"field {where}: an empty matrix needs rows and cols", field=where)
    if nrows != len(data) or any(len(r) != ncols for r in data):
        raise ParseError(f"field {where}: rows have inconsistent lengths", field=where)
    return IntMat(nrows, ncols, tuple(tuple(r) for r in data))


def read_weights(obj, where: str = "weights") -> tuple:
    if isinstance(obj, str):
        obj = [x for x in obj.split(",")]
    return tuple(to_int(x, f"{where}[{i}]") for i, x in enumerate(obj))


def read_laurent(obj, variables=None, where: str = "g") -> LaurentPoly:
    if isinstance(obj, str):
        try:
            return LaurentPoly.parse(obj, variables)
        except ParseError as exc:
            raise ParseError(f"field {where}: {exc}", field=where) from None
    try:
        g = LaurentPoly.from_json(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"field {where}: {exc}", field=where) from None
    if variables is not None and tuple(variables) != g.vars:
        raise ParseError(f"field {where}: variables differ from the vars field", field=where)
    return g


def read_fan(obj, where: str = "fan") -> Fan:
    rays = obj.get("rays", [])
    dim = to_int(obj["dim"], f"{where}.dim")
    for i, r in enumerate(rays):
        if len(r) != dim:
            raise ParseError(f"field {where}.rays[{i}]: length differs from dim", field=f"{where}.rays[{i}]")
    for i, idx in enumerate(obj["cones"]):
        if any(j >= len(rays) for j in idx):
            raise ParseError(f"field {where}.cones[{i}]: ray index out of range", field=f"{where}.cones[{i}]")
    norm = {"dim": dim, "cones": obj["cones"],
            "rays": [[to_int(x, f"{where}.rays") for x in r] for r in rays],
            "lineality": [[to_int(x, f"{where}.lineality") for x in l] for l in obj.get("lineality", [])]}
    return Fan.from_json(norm)
