"""Artifacts writer.

Raw dumps live under `<data_dir>/<owner>__<name>/`, analysis outputs under
`<out_dir>/<owner>__<name>/`. Every writer replaces its target atomically.
"""

from __future__ import annotations

import json
import os
import tempfile
from collections.abc import Iterable, Mapping
from datetime import datetime, timezone


def now_utc_z() -> str:
    return (
        datetime.now(timezone.utc).replace(microsecond=0).strftime("%Y-%m-%dT%H:%M:%SZ")
    )


def repo_dir_name(slug: str) -> str:
    owner, _, name = slug.partition("/")
    return f"{owner}__{name}"


def project_data_dir(data_dir: str, slug: str) -> str:
    return os.path.join(data_dir, repo_dir_name(slug))


def project_out_dir(out_dir: str, slug: str) -> str:
    return os.path.join(out_dir, repo_dir_name(slug))


def _atomic_write(path: str, data: bytes) -> None:
    dir_name = os.path.dirname(path) or "."
    os.makedirs(dir_name, exist_ok=True)
    base = os.path.basename(path)

    tmp = ""
    try:
        with tempfile.NamedTemporaryFile(
            "wb", delete=False, dir=dir_name, prefix=f".{base}.tmp."
        ) as fh:
            tmp = fh.name
            fh.write(data)
        os.replace(tmp, path)
        tmp = ""
    finally:
        if tmp:
            try:
                os.remove(tmp)
            except OSError:
                pass


def atomic_write_text(path: str, content: str) -> None:
    if content and not content.endswith("\n"):
        content += "\n"
    _atomic_write(path, content.encode("utf-8"))


def atomic_write_bytes(path: str, data: bytes) -> None:
    _atomic_write(path, data)


def atomic_write_json(path: str, payload: object) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
    atomic_write_text(path, text)


def ndjson_line(record: Mapping[str, object]) -> str:
    """Stable single-line JSON encoding (byte-identical for equal records)."""

    return json.dumps(record, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def write_ndjson(path: str, records: Iterable[Mapping[str, object]]) -> int:
    lines = [ndjson_line(r) for r in records]
    atomic_write_text(path, "\n".join(lines))
    return len(lines)


def write_run_json(out_dir: str, payload: Mapping[str, object]) -> str:
    path = os.path.join(out_dir, "run.json")
    atomic_write_json(path, dict(payload))
    return path


def remove_if_exists(path: str) -> bool:
    try:
        os.remove(path)
    except FileNotFoundError:
        return False
    return True
