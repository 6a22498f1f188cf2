"""JSON interchange for arrays, matrices, realizations and reports.

All scalars travel as canonical strings ("p/q" rationals, decimal
residues) with the field described once in a header, so identical
mathematical content always serializes to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .fields import Field, field_from_json
from .linalg import Matrix, Subspace
from .parray import ParameterArray, ValidityReport
from .realization import BracketTable, Realization
from .recognizer import BidiagonalPair


class MalformedInputError(ValueError):
    """Input JSON does not match the documented schema."""


def _require(obj: Any, key: str):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInputError(f"missing key {key!r}")
    return obj[key]


def load_field(obj: dict) -> Field:
    try:
        return field_from_json(_require(obj, "field"))
    except (ValueError, TypeError, KeyError) as exc:
        raise MalformedInputError(f"bad field header: {exc}") from exc


def _parse_scalars(field: Field, values, where: str) -> list:
    if not isinstance(values, list):
        raise MalformedInputError(f"{where} must be a list of scalar strings")
    out = []
    for v in values:
        try:
            out.append(field.parse(str(v)))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"bad scalar {v!r} in {where}") from exc
    return out


def parray_to_json(arr: ParameterArray) -> dict:
    f = arr.field
    return {
        "field": f.to_json(),
        "d": arr.d,
        "theta": [f.format(x) for x in arr.theta],
        "theta_star": [f.format(x) for x in arr.theta_star],
        "varphi": [f.format(x) for x in arr.varphi],
        "phi": [f.format(x) for x in arr.phi],
    }


def parray_from_json(obj: dict, field: Field | None = None) -> ParameterArray:
    field = field or load_field(obj)
    d = _require(obj, "d")
    if not isinstance(d, int) or d < 0:
        raise MalformedInputError("d must be a nonnegative integer")
    theta = _parse_scalars(field, _require(obj, "theta"), "theta")
    theta_star = _parse_scalars(field, _require(obj, "theta_star"), "theta_star")
    varphi = _parse_scalars(field, _require(obj, "varphi"), "varphi")
    phi = _parse_scalars(field, _require(obj, "phi"), "phi")
    if len(theta) != d + 1:
        raise MalformedInputError(f"theta must have {d + 1} entries")
    try:
        return ParameterArray.of(field, theta, theta_star, varphi, phi)
    except ValueError as exc:
        raise MalformedInputError(str(exc)) from exc


def matrix_to_json(m: Matrix) -> dict:
    f = m.field
    return {
        "d": m.nrows - 1,
        "field": f.to_json(),
        "rows": [[f.format(e) for e in row] for row in m.rows],
    }


def matrix_from_json(obj: dict, field: Field | None = None) -> Matrix:
    field = field or load_field(obj)
    rows = _require(obj, "rows")
    if not isinstance(rows, list) or not rows:
        raise MalformedInputError("rows must be a nonempty list")
    parsed = [_parse_scalars(field, row, "rows") for row in rows]
    if any(len(r) != len(parsed[0]) for r in parsed):
        raise MalformedInputError("rows are ragged")
    return Matrix.build(field, parsed)


def pair_from_json(obj: dict, field: Field | None = None) -> BidiagonalPair:
    a_obj = _require(obj, "A")
    a_star_obj = _require(obj, "A_star")
    field_a = field or load_field(a_obj)
    field_b = field or load_field(a_star_obj)
    return BidiagonalPair(matrix_from_json(a_obj, field_a),
                          matrix_from_json(a_star_obj, field_b))


def realization_to_json(real: Realization) -> dict:
    return {
        "field": real.field.to_json(),
        "d": real.d,
        "A": matrix_to_json(real.A),
        "A_star": matrix_to_json(real.A_star),
        "E": [matrix_to_json(e) for e in real.E],
        "E_star": [matrix_to_json(e) for e in real.E_star],
        "S": matrix_to_json(real.S),
        "S_star": matrix_to_json(real.S_star),
    }


def brackets_to_json(table: BracketTable) -> dict:
    f = table.field
    return {
        "field": f.to_json(),
        "d": table.d,
        "entries": [
            {"r": r, "s": s, "t": t, "value": f.format(table.value(r, s, t))}
            for (r, s, t) in table.triples()
        ],
    }


def subspaces_to_json(components) -> list:
    """A flag or decomposition as a list of column lists."""
    out = []
    for sub in components:
        assert isinstance(sub, Subspace)
        f = sub.field
        out.append([[f.format(e) for e in col] for col in sub.cols])
    return out


def validity_to_json(report: ValidityReport) -> dict:
    return report.to_json()


def dumps(obj) -> str:
    """Canonical rendering: fixed key order, no trailing whitespace."""
    return json.dumps(obj, indent=2, sort_keys=False)
