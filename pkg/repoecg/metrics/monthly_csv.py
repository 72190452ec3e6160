"""monthly.csv: one row per month, one column per registry component."""

from __future__ import annotations

import csv
import io
import os
from collections.abc import Sequence

from ..artifacts import atomic_write_text, project_data_dir
from ..errors import MissingInputError, SchemaMismatchError
from .months import MonthBucket, MonthlyRow
from .registry import BY_ID, COMPONENT_IDS

MONTHLY_FILE = "monthly.csv"
MONTH_COLUMN = "month"


def monthly_path(data_dir: str, slug: str) -> str:
    return os.path.join(project_data_dir(data_dir, slug), MONTHLY_FILE)


def format_value(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return format(value, ".10g")


def render_monthly_csv(rows: Sequence[MonthlyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([MONTH_COLUMN, *COMPONENT_IDS])
    for row in sorted(rows, key=lambda r: r.bucket):
        w.writerow([row.bucket.label(), *(format_value(row.get(c)) for c in COMPONENT_IDS)])
    return buf.getvalue()


def write_monthly_csv(path: str, rows: Sequence[MonthlyRow]) -> None:
    atomic_write_text(path, render_monthly_csv(rows))


def _parse_cell(component_id: str, cell: str) -> float | int | None:
    text = cell.strip()
    if not text:
        return None
    if BY_ID[component_id].kind == "count":
        return int(float(text))
    return float(text)


def read_monthly_csv(path: str, slug: str) -> list[MonthlyRow]:
    if not os.path.isfile(path):
        raise MissingInputError(f"monthly metrics not found: {path} (run `metrics` first)")
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return []
        if header[0] != MONTH_COLUMN or tuple(header[1:]) != COMPONENT_IDS:
            raise SchemaMismatchError(f"unexpected monthly.csv columns: {path}")
        rows: list[MonthlyRow] = []
        for lineno, cells in enumerate(reader, start=2):
            if len(cells) != len(header):
                raise SchemaMismatchError(f"{path}:{lineno}: expected {len(header)} cells")
            try:
                bucket = MonthBucket.parse(slug, cells[0])
                values = {
                    cid: _parse_cell(cid, cell)
                    for cid, cell in zip(COMPONENT_IDS, cells[1:], strict=True)
                }
            except ValueError as exc:
                raise SchemaMismatchError(f"{path}:{lineno}: {exc}") from exc
            rows.append(MonthlyRow(bucket, values))
    return rows
