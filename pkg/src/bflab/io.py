"""Text formats for scalars, points, forms, lines and construction bundles; report rendering.

Scalar: ``[sign]digits[/digits]``. Point files hold two scalars per line, line
files ``a b c [weight]``, form files ``m11 m12 m21 m22 kind``. Lines starting
with ``#`` and blank lines are skipped. UTF-8, ``\\n`` newlines.
"""

from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .core import CROSS, DOT, BilinearForm, Point, PreconditionError, format_scalar, parse_scalar, point_set, scalar_set
from .equations import WeightedLine


def _rows(path) -> list[list[str]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise PreconditionError(f"no such file: {path}") from None
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None
    rows = []
    for line in text.split("\n"):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            rows.append(stripped.split())
    return rows


def _scalars(tokens, path) -> list[Fraction]:
    try:
        return [parse_scalar(t) for t in tokens]
    except PreconditionError as exc:
        raise PreconditionError(f"{path}: {exc}") from None


def read_scalars(path) -> tuple[Fraction, ...]:
    return scalar_set(x for row in _rows(path) for x in _scalars(row, path))


def read_points(path, dedupe: bool = True) -> tuple[Point, ...] | list[Point]:
    pts = []
    for row in _rows(path):
        if len(row) != 2:
            raise PreconditionError(f"{path}: point rows need two scalars, got {' '.join(row)!r}")
        pts.append(Point(*_scalars(row, path)))
    return point_set(pts) if dedupe else pts


def read_form(source: str) -> BilinearForm:
    if source == "dot":
        return DOT
    if source in ("cross", "skew"):
        return CROSS
    rows = _rows(source)
    tokens = [t for row in rows for t in row]
    if len(tokens) != 5:
        raise PreconditionError(f"{source}: form file needs four scalars and a kind tag")
    return BilinearForm(*_scalars(tokens[:4], source), tokens[4])


def read_lines(path) -> list[WeightedLine]:
    lines = []
    for row in _rows(path):
        if len(row) not in (3, 4):
            raise PreconditionError(f"{path}: line rows are 'a b c [weight]', got {' '.join(row)!r}")
        a, b, c = _scalars(row[:3], path)
        weight = int(row[3]) if len(row) == 4 else 1
        lines.append(WeightedLine.from_coefficients(a, b, c, weight))
    return lines


def write_scalars(path, values: Iterable[Fraction]) -> None:
    Path(path).write_text("".join(format_scalar(v) + "\n" for v in values), encoding="utf-8")


def format_points(points: Iterable[Point]) -> str:
    return "".join(f"{format_scalar(p.x)} {format_scalar(p.y)}\n" for p in points)


def write_points(path, points: Iterable[Point]) -> None:
    Path(path).write_text(format_points(points), encoding="utf-8")


def write_bundle(bundle, directory) -> None:
    """Directory with p1.pts, p2.pts, lines.txt (rows ``a b``) and meta.json."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_points(d / "p1.pts", bundle.p1)
    write_points(d / "p2.pts", bundle.p2)
    (d / "lines.txt").write_text("".join(f"{ln.a} {ln.b}\n" for ln in bundle.lines), encoding="utf-8")
    meta = {"N": bundle.n, "sizes": bundle.sizes()}
    (d / "meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalar
        return obj.item()
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def dumps_csv(obj) -> str:
    """Report rows as a table when present, otherwise top-level scalar fields as key,value."""
    obj = _jsonable(obj)
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(obj, dict) and isinstance(obj.get("rows"), list) and obj["rows"]:
        cols = ["name", "measured", "bound", "ratio", "kind", "flag"]
        writer.writerow(cols)
        for row in obj["rows"]:
            writer.writerow([row.get(c) for c in cols])
        return buf.getvalue()
    writer.writerow(["key", "value"])
    for key in sorted(obj):
        value = obj[key]
        if not isinstance(value, (dict, list)):
            writer.writerow([key, value])
    return buf.getvalue()


def read_fit_csv(path) -> list[tuple[int, int]]:
    """Rows ``size,value``; a non-numeric first row is taken as a header."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise PreconditionError(f"no such file: {path}") from None
    records = []
    for i, row in enumerate(csv.reader(_io.StringIO(text))):
        if not row or row[0].startswith("#"):
            continue
        try:
            records.append((int(row[0]), int(row[1])))
        except (ValueError, IndexError):
            if i == 0:
                continue
            raise PreconditionError(f"{path}: bad fit row {row!r}") from None
    return records
