"""Filter-bank documents: JSON serialization, schema checks and atomic writes."""

from __future__ import annotations

import json
import os
import tempfile
from collections import OrderedDict
from dataclasses import dataclass

import jsonschema
import numpy as np

from .filters import Filter
from .mesh import central_window

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Unreadable or schema-violating document; ``where`` names the line or field."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


_FILTER = {
    "type": "object",
    "required": ["offset", "coeffs"],
    "additionalProperties": False,
    "properties": {
        "offset": {"type": "integer"},
        "coeffs": {"type": "array", "items": {"type": "number"}, "minItems": 1},
    },
}

DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "n", "h_left", "h_right", "regular", "irregular", "diagnostics"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "n": {"type": "integer", "minimum": 1},
        "h_left": {"type": "number", "exclusiveMinimum": 0},
        "h_right": {"type": "number", "exclusiveMinimum": 0},
        "regular": {
            "type": "object",
            "required": ["p", "d", "q1", "q2"],
            "additionalProperties": False,
            "properties": {k: _FILTER for k in ("p", "d", "q1", "q2")},
        },
        "irregular": {
            "type": "object",
            "required": ["row_offset", "rows", "columns", "moments", "matrix"],
            "additionalProperties": False,
            "properties": {
                "row_offset": {"type": "integer"},
                "rows": {"type": "integer", "minimum": 0},
                "columns": {"type": "integer", "minimum": 0},
                "moments": {"type": "integer", "minimum": 1},
                "matrix": {"type": "array", "items": {"type": "number"}},
            },
        },
        "diagnostics": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["value", "tol", "passed"],
                "properties": {
                    "value": {"type": "number"},
                    "tol": {"type": "number"},
                    "passed": {"type": "boolean"},
                },
            },
        },
    },
}


@dataclass
class FilterBankDocument:
    n: int
    h_left: float
    h_right: float
    regular: "OrderedDict[str, Filter]"
    q_irr: np.ndarray
    diagnostics: "OrderedDict[str, OrderedDict]"
    moments: int = 0

    def __post_init__(self):
        if not self.moments:
            self.moments = self.n

    @property
    def row_offset(self) -> int:
        return 5 - 6 * self.n


def _filter_obj(f: Filter):
    return OrderedDict(offset=int(f.offset), coeffs=[float(c) for c in f.coeffs])


def document_from_construction(fc, report=None) -> FilterBankDocument:
    reg = fc.regular
    regular = OrderedDict(p=reg.p, d=reg.d, q1=reg.q1, q2=reg.q2)
    diag = report.as_dict() if report is not None else OrderedDict()
    return FilterBankDocument(fc.cfg.n, fc.cfg.h_left, fc.cfg.h_right, regular,
                              np.array(fc.frame.q_irr, dtype=float), diag, fc.n_moments)


def to_json_obj(doc: FilterBankDocument) -> OrderedDict:
    Q = np.asarray(doc.q_irr, dtype=float)
    return OrderedDict(
        schema_version=SCHEMA_VERSION,
        n=int(doc.n),
        h_left=float(doc.h_left),
        h_right=float(doc.h_right),
        regular=OrderedDict((k, _filter_obj(f)) for k, f in doc.regular.items()),
        irregular=OrderedDict(
            row_offset=doc.row_offset,
            rows=int(Q.shape[0]),
            columns=int(Q.shape[1]),
            moments=int(doc.moments),
            matrix=[float(v) for v in Q.ravel()],
        ),
        diagnostics=OrderedDict(
            (k, OrderedDict(value=float(v["value"]), tol=float(v["tol"]), passed=bool(v["passed"])))
            for k, v in doc.diagnostics.items()
        ),
    )


def serialize(doc: FilterBankDocument) -> str:
    """Fixed key order; floats use the shortest repr that round-trips exactly."""
    return json.dumps(to_json_obj(doc), indent=2, allow_nan=False) + "\n"


def _field_path(err: jsonschema.ValidationError) -> str:
    path = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
    return "document" + path


def parse(text: str) -> FilterBankDocument:
    try:
        obj = json.loads(text, object_pairs_hook=OrderedDict)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, where=f"line {exc.lineno}, column {exc.colno}") from None
    validator = jsonschema.Draft7Validator(DOCUMENT_SCHEMA)
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise DocumentError(e.message, where=_field_path(e))
    n = obj["n"]
    irr = obj["irregular"]
    rows, cols = irr["rows"], irr["columns"]
    if irr["moments"] > n:
        raise DocumentError(f"at most n={n} moments", where="document.irregular.moments")
    if irr["row_offset"] != 5 - 6 * n:
        raise DocumentError(f"expected {5 - 6 * n}", where="document.irregular.row_offset")
    if rows != len(central_window(n)):
        raise DocumentError(f"expected {len(central_window(n))}", where="document.irregular.rows")
    if len(irr["matrix"]) != rows * cols:
        raise DocumentError(f"expected {rows * cols} entries, got {len(irr['matrix'])}",
                            where="document.irregular.matrix")
    regular = OrderedDict(
        (k, Filter(v["coeffs"], v["offset"], trim=False)) for k, v in obj["regular"].items()
    )
    Q = np.array(irr["matrix"], dtype=float).reshape(rows, cols)
    return FilterBankDocument(n, float(obj["h_left"]), float(obj["h_right"]), regular, Q,
                              obj["diagnostics"], irr["moments"])


def atomic_write(path, text: str) -> None:
    """Write to a temporary file in the target directory, then rename over ``path``."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_document(doc: FilterBankDocument, path) -> None:
    atomic_write(path, serialize(doc))


def read_document(path) -> FilterBankDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def samples_csv(x, y, header=("x", "value")) -> str:
    lines = [",".join(header)]
    lines += [f"{float(a)!r},{float(b)!r}" for a, b in zip(x, y)]
    return "\n".join(lines) + "\n"
