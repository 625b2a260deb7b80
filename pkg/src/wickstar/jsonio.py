"""JSON loading for charts, vector fields, chart maps, and actions.

All expressions inside the files use the shared grammar; everything is
validated at load time, before any computation runs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Optional, Sequence

from .chart import Chart
from .errors import InputError, ValidationError
from .expr import parse
from .fields import ChartMap, VectorField
from .lie import LieAction, validate_action
from .ratfunc import RationalFunction
from .scalars import Scalar


def _read(path) -> dict:
    try:
        with open(path) as handle:
            data = json.load(handle)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def _parse_expr(text, dim: int, where: str) -> RationalFunction:
    if not isinstance(text, str):
        raise InputError(f"{where}: expected an expression string, got {text!r}")
    return parse(text, dim)


def _parse_row(row, dim: int, where: str) -> List[RationalFunction]:
    if not isinstance(row, list) or len(row) != dim:
        raise InputError(f"{where}: expected a list of {dim} expressions")
    return [_parse_expr(e, dim, where) for e in row]


def _parse_scalar(text, where: str) -> Scalar:
    value = _parse_expr(text, 1, where).constant_value()
    if value is None:
        raise InputError(f"{where}: expected a constant, got {text!r}")
    return value


def _potential_rows(data: dict, key: str, dim: int, order: int, path) -> Optional[list]:
    """Accept either a flat order-0 row or a list of per-order rows."""
    raw = data.get(key)
    rows: List[Optional[List[RationalFunction]]]
    if raw is None:
        rows = None
    elif isinstance(raw, list) and raw and isinstance(raw[0], str):
        rows = [_parse_row(raw, dim, f"{path}: {key}[0]")]
    elif isinstance(raw, list):
        rows = [_parse_row(r, dim, f"{path}: {key}[{s}]") for s, r in enumerate(raw)]
    else:
        raise InputError(f"{path}: {key} must be a list")
    for corr in data.get("corrections", []):
        if not isinstance(corr, dict) or "order" not in corr:
            raise InputError(f"{path}: corrections entries need an 'order'")
        if key not in corr:
            continue
        s = corr["order"]
        if not isinstance(s, int) or s < 1 or s > order:
            raise InputError(f"{path}: correction order {s!r} out of range 1..{order}")
        if rows is None:
            raise InputError(f"{path}: corrections for {key} without base data")
        while len(rows) <= s:
            rows.append(None)
        if rows[s] is not None:
            raise InputError(f"{path}: order {s} of {key} specified twice")
        rows[s] = _parse_row(corr[key], dim, f"{path}: correction order {s}")
    if rows is None:
        return None
    zero_row = [RationalFunction.zero(dim) for _ in range(dim)]
    return [r if r is not None else list(zero_row) for r in rows]


def load_chart(path, order_override: Optional[int] = None) -> Chart:
    data = _read(path)
    dim = data.get("dimension")
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"{path}: 'dimension' must be a positive integer")
    order = data.get("order", 4)
    if order_override is not None:
        order = order_override
    if not isinstance(order, int) or order < 0:
        raise InputError(f"{path}: 'order' must be a non-negative integer")
    u = _potential_rows(data, "u", dim, order, path)
    if u is None:
        raise InputError(f"{path}: chart needs 'u' data")
    v = _potential_rows(data, "v", dim, order, path)
    chart = Chart(dim, order, u, v)
    chart.require_valid()
    return chart


def load_field(path, dim: int) -> VectorField:
    data = _read(path)
    if "hol" not in data or "antihol" not in data:
        raise InputError(f"{path}: field needs 'hol' and 'antihol' components")
    hol = _parse_row(data["hol"], dim, f"{path}: hol")
    antihol = _parse_row(data["antihol"], dim, f"{path}: antihol")
    return VectorField(hol, antihol)


def load_map(path, dim: int) -> ChartMap:
    data = _read(path)
    if "hol" not in data or "inverse" not in data:
        raise InputError(f"{path}: chart map needs 'hol' images and an 'inverse'")
    hol = _parse_row(data["hol"], dim, f"{path}: hol")
    antihol = (
        _parse_row(data["antihol"], dim, f"{path}: antihol") if "antihol" in data else None
    )
    inv = data["inverse"]
    if not isinstance(inv, dict) or "hol" not in inv:
        raise InputError(f"{path}: 'inverse' needs its own 'hol' images")
    inv_hol = _parse_row(inv["hol"], dim, f"{path}: inverse hol")
    inv_antihol = (
        _parse_row(inv["antihol"], dim, f"{path}: inverse antihol")
        if "antihol" in inv
        else None
    )
    return ChartMap(hol, inv_hol, antihol, inv_antihol)


def load_action(path, dim: int) -> LieAction:
    data = _read(path)
    m = data.get("dim")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"{path}: action needs a positive 'dim'")
    raw_fields = data.get("fields")
    if not isinstance(raw_fields, list) or len(raw_fields) != m:
        raise InputError(f"{path}: expected {m} entries in 'fields'")
    fields = []
    for idx, f in enumerate(raw_fields):
        if not isinstance(f, dict) or "hol" not in f or "antihol" not in f:
            raise InputError(f"{path}: fields[{idx}] needs 'hol' and 'antihol'")
        fields.append(
            VectorField(
                _parse_row(f["hol"], dim, f"{path}: fields[{idx}].hol"),
                _parse_row(f["antihol"], dim, f"{path}: fields[{idx}].antihol"),
            )
        )
    structure = {}
    for entry in data.get("structure", []):
        if not isinstance(entry, list) or len(entry) != 4:
            raise InputError(f"{path}: structure entries are [i, j, k, coefficient]")
        i, j, k, c = entry
        for t in (i, j, k):
            if not isinstance(t, int) or not 1 <= t <= m:
                raise InputError(f"{path}: structure index {t!r} out of range 1..{m}")
        structure[(i - 1, j - 1, k - 1)] = _parse_scalar(c, f"{path}: structure {entry}")
    names = data.get("names")
    if names is not None and (
        not isinstance(names, list) or len(names) != m or not all(isinstance(s, str) for s in names)
    ):
        raise InputError(f"{path}: 'names' must list {m} strings")
    try:
        action = LieAction(structure, fields, names)
    except ValidationError as exc:
        raise InputError(f"{path}: {exc}")
    report = validate_action(action)
    if not report.ok:
        raise InputError(
            f"{path}: invalid action: "
            + "; ".join(f"{c.name} ({c.detail})" for c in report.failures())
        )
    return action
