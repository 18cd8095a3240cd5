"""Strict CSV and JSON input/output for the command-line tools.

Data matrices are plain comma-separated numbers, one object per row; a
single non-numeric first row is treated as a header.  Label files carry
an object_id,label header.  Parsing is strict: every failure names the
offending row and column (1-based, counting physical lines), and NaN or
infinite cells are rejected rather than coerced.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import InputError


def _parse_cell(token: str, path, line: int, col: int) -> float:
    text = token.strip()
    if not text:
        raise InputError(f"{path}: row {line}, column {col}: empty cell")
    try:
        value = float(text)
    except ValueError:
        raise InputError(
            f"{path}: row {line}, column {col}: non-numeric value {text!r}"
        ) from None
    if math.isnan(value) or math.isinf(value):
        raise InputError(
            f"{path}: row {line}, column {col}: non-finite value {text!r}"
        )
    return value


def _is_numeric_row(row: list[str]) -> bool:
    if not row:
        return False
    for token in row:
        try:
            float(token.strip())
        except ValueError:
            return False
    return True


def read_matrix_csv(path) -> np.ndarray:
    """Numeric matrix from CSV, with optional header auto-detection."""
    rows: list[list[float]] = []
    width = None
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        for line, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if line == 1 and not _is_numeric_row(row):
                continue
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise InputError(
                    f"{path}: row {line}: expected {width} columns, found {len(row)}"
                )
            rows.append(
                [_parse_cell(tok, path, line, col) for col, tok in enumerate(row, start=1)]
            )
    if not rows:
        raise InputError(f"{path}: no data rows")
    return np.array(rows, dtype=float)


def write_matrix_csv(path, matrix) -> None:
    arr = np.asarray(matrix, dtype=float)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for row in arr.tolist():
            writer.writerow([repr(v) for v in row])


def read_labels_csv(path) -> tuple[list[int], list[str]]:
    """(object ids, label tokens) from an object_id,label file.

    The header row is optional; ids must be unique integers.  Label
    tokens are kept as strings so external tools may use any naming.
    """
    ids: list[int] = []
    tokens: list[str] = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        for line, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if line == 1 and not _is_numeric_row(row[:1]):
                continue
            if len(row) != 2:
                raise InputError(
                    f"{path}: row {line}: expected 2 columns (object_id,label), found {len(row)}"
                )
            try:
                obj = int(row[0].strip())
            except ValueError:
                raise InputError(
                    f"{path}: row {line}, column 1: object id {row[0]!r} is not an integer"
                ) from None
            label = row[1].strip()
            if not label:
                raise InputError(f"{path}: row {line}, column 2: empty label")
            ids.append(obj)
            tokens.append(label)
    if not ids:
        raise InputError(f"{path}: no label rows")
    if len(set(ids)) != len(ids):
        raise InputError(f"{path}: duplicate object ids")
    return ids, tokens


def read_labelfile_array(path, n_objects: int | None = None) -> np.ndarray:
    """Label array indexed by object id; ids must cover 0..N-1 exactly."""
    ids, tokens = read_labels_csv(path)
    n = n_objects if n_objects is not None else len(ids)
    if sorted(ids) != list(range(n)):
        missing = sorted(set(range(n)) - set(ids))
        if missing:
            raise InputError(f"{path}: missing object ids (first: {missing[0]})")
        raise InputError(f"{path}: object ids do not match 0..{n - 1}")
    codes: dict[str, int] = {}
    out = np.empty(n, dtype=np.int64)
    for obj, token in sorted(zip(ids, tokens)):
        out[obj] = codes.setdefault(token, len(codes))
    return out


def write_labels_csv(path, labels) -> None:
    arr = np.asarray(labels)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["object_id", "label"])
        for i, label in enumerate(arr.tolist()):
            writer.writerow([i, int(label)])


def write_json(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def write_rows_csv(path, header: list[str], rows) -> None:
    """Small report tables: a header row plus plain value rows."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [repr(v) if isinstance(v, float) else v for v in row]
            )


def ensure_parent(path) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    return out
