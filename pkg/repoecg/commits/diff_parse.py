"""Parse unified diff patches into per-file hunk lines.

Each kept line carries its change marker and the new-side line number it
sits at; deleted lines are anchored at the new-side position where they
were removed so they can be attributed to the enclosing unit.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass
from typing import Literal

LineKind = Literal["add", "del", "ctx"]


@dataclass(frozen=True)
class DiffLine:
    kind: LineKind
    new_line: int
    text: str


@dataclass(frozen=True)
class FileDiff:
    """Collected hunk lines for a single file."""

    path: str
    lines: tuple[DiffLine, ...]

    @property
    def added(self) -> int:
        return sum(1 for x in self.lines if x.kind == "add")

    @property
    def deleted(self) -> int:
        return sum(1 for x in self.lines if x.kind == "del")


_HUNK_RE = re.compile(r"^@@ -(\d+)(?:,(\d+))? \+(\d+)(?:,(\d+))? @@")


def _parse_diff_git_paths(line: str) -> tuple[str, str] | None:
    """Parse `diff --git <a> <b>` and return raw tokens.

    Supports quoted paths emitted by git for whitespace/special characters.
    """

    prefix = "diff --git "
    if not line.startswith(prefix):
        return None

    rest = line[len(prefix) :]
    try:
        parts = shlex.split(rest, posix=True)
    except ValueError:
        return None

    if len(parts) < 2:
        return None

    a_tok, b_tok = parts[0], parts[1]
    if not (a_tok.startswith("a/") and b_tok.startswith("b/")):
        return None
    return a_tok, b_tok


def _parse_path_token(token: str) -> str:
    t = (token or "").strip()
    if not t:
        return ""
    try:
        parts = shlex.split(t, posix=True)
    except ValueError:
        return ""
    if len(parts) != 1:
        return ""
    return parts[0]


def parse_diff_patch(
    patch: str | None, *, default_path: str | None = None
) -> tuple[list[FileDiff], list[str]]:
    """Parse a unified diff patch.

    `default_path` names the file when the patch starts with bare `---`/`@@`
    lines (no `diff --git` header).

    Returns:
      (files, warnings)
    """

    text = "" if patch is None else str(patch)

    files: list[FileDiff] = []
    warnings: list[str] = []

    cur_path: str | None = default_path
    cur_lines: list[DiffLine] = []
    cur_new_line: int | None = None
    cur_skip_kind: str | None = None

    def flush() -> None:
        nonlocal cur_path, cur_lines, cur_new_line, cur_skip_kind
        if cur_path is not None:
            if cur_skip_kind is not None:
                warnings.append(f"diff_parse_skipped kind={cur_skip_kind} path={cur_path}")
            elif cur_lines:
                files.append(FileDiff(path=cur_path, lines=tuple(cur_lines)))
        cur_path = None
        cur_lines = []
        cur_new_line = None
        cur_skip_kind = None

    for line in text.splitlines():
        if line.startswith("diff --git "):
            flush()
            toks = _parse_diff_git_paths(line)
            if toks is None:
                warnings.append("diff_parse_skipped kind=parse_failed path=")
                continue
            cur_path = toks[1][2:] or None
            continue

        if cur_path is None or cur_skip_kind is not None:
            continue

        if line.startswith("+++ ") and cur_new_line is None:
            plus = _parse_path_token(line[4:])
            if plus == "/dev/null":
                cur_skip_kind = "deleted"
            elif plus.startswith("b/"):
                cur_path = plus[2:]
            continue

        if line.startswith("--- ") and cur_new_line is None:
            continue

        if line.startswith("GIT binary patch") or line.startswith("Binary files "):
            cur_skip_kind = "binary"
            continue

        if line.startswith("@@"):
            hm = _HUNK_RE.match(line)
            if hm is None:
                cur_skip_kind = "parse_failed"
                cur_new_line = None
                continue
            cur_new_line = int(hm.group(3))
            continue

        if cur_new_line is None or not line:
            continue

        prefix = line[0]
        if prefix == "\\":
            # "\\ No newline at end of file"
            continue
        if prefix == "+":
            cur_lines.append(DiffLine(kind="add", new_line=cur_new_line, text=line[1:]))
            cur_new_line += 1
        elif prefix == " ":
            cur_lines.append(DiffLine(kind="ctx", new_line=cur_new_line, text=line[1:]))
            cur_new_line += 1
        elif prefix == "-":
            cur_lines.append(DiffLine(kind="del", new_line=cur_new_line, text=line[1:]))

    flush()
    return files, warnings
