"""Changed function-like units from a unified diff.

Diffs are expected to carry whole functions as context (`git show
--function-context`); a unit whose body runs past the available context is
measured on what is visible.

Measures per unit:
- size_loc: non-blank lines, signature included
- cyclomatic: 1 + branching tokens (language-adjusted)
- param_count: declared parameters
- churn: added + deleted lines falling inside the unit
"""

from __future__ import annotations

import os
import re
from collections.abc import Callable
from dataclasses import dataclass

from .diff_parse import DiffLine, FileDiff, parse_diff_patch


@dataclass(frozen=True)
class ChangedUnit:
    file_path: str
    unit_name: str
    size_loc: int
    cyclomatic: int
    param_count: int
    churn: int

    def __post_init__(self) -> None:
        if self.cyclomatic < 1:
            raise ValueError("cyclomatic must be >= 1")


@dataclass(frozen=True)
class _Span:
    name: str
    start: int  # index into the visible new-side lines
    end: int  # inclusive
    params: int


PYTHON_EXTS = frozenset({".py", ".pyx", ".pyi"})
C_LIKE_EXTS = frozenset(
    {
        ".c",
        ".h",
        ".cc",
        ".cpp",
        ".cxx",
        ".c++",
        ".hpp",
        ".hh",
        ".hxx",
        ".cu",
        ".cuh",
        ".java",
        ".cs",
        ".js",
        ".ts",
    }
)
FORTRAN_EXTS = frozenset({".f", ".for", ".f77", ".f90", ".f95", ".f03", ".f08"})
FIXED_FORM_FORTRAN_EXTS = frozenset({".f", ".for", ".f77"})


def language_of(file_path: str) -> str | None:
    ext = os.path.splitext(file_path)[1].lower()
    if ext in PYTHON_EXTS:
        return "python"
    if ext in C_LIKE_EXTS:
        return "c"
    if ext in FORTRAN_EXTS:
        return "fortran"
    return None


def _split_params(text: str) -> int:
    """Count comma-separated parameters at bracket depth 0."""

    parts: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch in "([{<":
            depth += 1
        elif ch in ")]}>":
            depth = max(0, depth - 1)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        cur.append(ch)
    parts.append("".join(cur))
    names = [p.strip() for p in parts]
    return sum(1 for p in names if p and p not in ("*", "/", "void", "..."))


def _paren_content(text: str, open_idx: int) -> str | None:
    """Text between `text[open_idx]` == '(' and its matching ')'."""

    depth = 0
    for i in range(open_idx, len(text)):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return text[open_idx + 1 : i]
    return None


# --- Python -----------------------------------------------------------------

_PY_DEF_RE = re.compile(r"^(\s*)(?:async\s+)?def\s+(\w+)\s*\(")
_PY_STRING_RE = re.compile(r"\"(?:\\.|[^\"\\])*\"|'(?:\\.|[^'\\])*'")
_PY_BRANCH_RE = re.compile(r"\b(?:if|elif|for|while|except|case|and|or)\b")


def _py_clean(texts: list[str]) -> list[str]:
    """Blank string literals and comments; triple-quoted strings may span lines."""

    out: list[str] = []
    open_quote: str | None = None
    for line in texts:
        buf: list[str] = []
        i = 0
        while i < len(line):
            if open_quote is not None:
                close = line.find(open_quote, i)
                if close < 0:
                    break
                open_quote = None
                buf.append('""')
                i = close + 3
                continue
            if line.startswith('"""', i) or line.startswith("'''", i):
                open_quote = line[i : i + 3]
                i += 3
                continue
            ch = line[i]
            if ch == "#":
                break
            if ch in "\"'":
                m = _PY_STRING_RE.match(line, i)
                if m is None:
                    break
                buf.append('""')
                i = m.end()
                continue
            buf.append(ch)
            i += 1
        out.append("".join(buf))
    return out


def _indent(line: str) -> int:
    return len(line) - len(line.lstrip(" \t"))


def _python_spans(texts: list[str]) -> list[_Span]:
    clean = _py_clean(texts)
    spans: list[_Span] = []
    for i, line in enumerate(clean):
        m = _PY_DEF_RE.match(line)
        if m is None:
            continue
        indent = len(m.group(1))

        sig = ""
        params: str | None = None
        j = i
        while j < len(clean) and j < i + 30:
            sig += clean[j] + " "
            params = _paren_content(sig, sig.index("("))
            if params is not None:
                break
            j += 1
        end = j
        k = j + 1
        while k < len(clean):
            body = clean[k]
            if body.strip() and _indent(body) <= indent:
                break
            if body.strip():
                end = k
            k += 1
        spans.append(
            _Span(name=m.group(2), start=i, end=end, params=_split_params(params or ""))
        )
    return spans


# --- C-like -----------------------------------------------------------------

_C_KEYWORDS = frozenset(
    {
        "if",
        "for",
        "while",
        "switch",
        "return",
        "else",
        "do",
        "case",
        "catch",
        "sizeof",
        "new",
        "delete",
        "throw",
        "defined",
    }
)
_C_SIG_RE = re.compile(r"([A-Za-z_~][\w:~]*)\s*\(")
_C_STRING_RE = re.compile(r"\"(?:\\.|[^\"\\])*\"|'(?:\\.|[^'\\])*'")
_C_BRANCH_RE = re.compile(r"\b(?:if|for|while|case|catch)\b|&&|\|\|")


def _c_clean(texts: list[str]) -> list[str]:
    """Strip string literals and comments, keeping line structure."""

    out: list[str] = []
    in_block = False
    for line in texts:
        s = _C_STRING_RE.sub('""', line)
        buf: list[str] = []
        i = 0
        while i < len(s):
            if in_block:
                close = s.find("*/", i)
                if close < 0:
                    i = len(s)
                    continue
                in_block = False
                i = close + 2
                continue
            if s.startswith("//", i):
                break
            if s.startswith("/*", i):
                in_block = True
                i += 2
                continue
            buf.append(s[i])
            i += 1
        out.append("".join(buf))
    return out


def _c_spans(texts: list[str]) -> list[_Span]:
    clean = _c_clean(texts)
    spans: list[_Span] = []
    i = 0
    while i < len(clean):
        line = clean[i]
        stripped = line.strip()
        m = _C_SIG_RE.search(line)
        if (
            m is None
            or stripped.startswith("#")
            or m.group(1).split("::")[-1] in _C_KEYWORDS
            or "=" in line[: m.start()]
            or stripped.endswith(";")
        ):
            i += 1
            continue

        # Join lines until the body opens ('{') or the statement ends (';').
        joined = ""
        open_line: int | None = None
        j = i
        while j < len(clean) and j < i + 10:
            joined += clean[j] + "\n"
            brace = joined.find("{")
            semi = joined.find(";")
            if semi >= 0 and (brace < 0 or semi < brace):
                break
            if brace >= 0:
                open_line = j
                break
            j += 1
        if open_line is None:
            i += 1
            continue

        paren_at = joined.find("(", m.start(1))
        params = _paren_content(joined, paren_at)
        if params is None or joined.find(")", paren_at) > joined.find("{"):
            i += 1
            continue

        depth = 0
        end = open_line
        started = False
        for k in range(i, len(clean)):
            segment = clean[k]
            if k == i:
                segment = segment[m.start() :]
            depth += segment.count("{") - segment.count("}")
            if "{" in segment:
                started = True
            end = k
            if started and depth <= 0:
                break
        spans.append(
            _Span(
                name=m.group(1), start=i, end=end, params=_split_params(params)
            )
        )
        i = end + 1
    return spans


# --- Fortran ----------------------------------------------------------------

_F_START_RE = re.compile(
    r"^\s*(?:[\w\s\*\(\),=]*?\s)?(subroutine|function)\s+(\w+)\s*(\(([^)]*)\))?",
    re.IGNORECASE,
)
_F_END_UNIT_RE = re.compile(r"^\s*end\s*(?:(?:subroutine|function)\b.*)?$", re.IGNORECASE)
_F_NOISE_RE = re.compile(
    r"\bend\s*(?:if|do|select)\b|\bselect\s+case\b|\bcase\s+default\b",
    re.IGNORECASE,
)
_F_BRANCH_RE = re.compile(r"\b(?:if|do|case)\b|\.and\.|\.or\.", re.IGNORECASE)


def _f_clean(texts: list[str], fixed_form: bool) -> list[str]:
    out: list[str] = []
    for line in texts:
        if fixed_form and line[:1] in ("c", "C", "*"):
            out.append("")
            continue
        s = _C_STRING_RE.sub("''", line)
        bang = s.find("!")
        out.append(s[:bang] if bang >= 0 else s)
    return out


def _fortran_spans(texts: list[str], fixed_form: bool) -> list[_Span]:
    clean = _f_clean(texts, fixed_form)
    spans: list[_Span] = []
    stack: list[tuple[str, int, int]] = []
    for i, line in enumerate(clean):
        if not line.strip():
            continue
        if _F_END_UNIT_RE.match(line) and stack:
            name, start, params = stack.pop()
            spans.append(_Span(name=name, start=start, end=i, params=params))
            continue
        m = _F_START_RE.match(line)
        if m is None or line.strip().lower().startswith("end"):
            continue
        params = _split_params(m.group(4) or "")
        stack.append((m.group(2), i, params))
    last = len(clean) - 1
    while stack:
        name, start, params = stack.pop()
        spans.append(_Span(name=name, start=start, end=last, params=params))
    spans.sort(key=lambda s: s.start)
    return spans


def _branch_count(lang: str, lines: list[str], fixed_form: bool) -> int:
    if lang == "python":
        return sum(len(_PY_BRANCH_RE.findall(x)) for x in _py_clean(lines))
    if lang == "c":
        return sum(len(_C_BRANCH_RE.findall(x)) for x in _c_clean(lines))
    return sum(
        len(_F_BRANCH_RE.findall(_F_NOISE_RE.sub(" ", x)))
        for x in _f_clean(lines, fixed_form)
    )


def cyclomatic_proxy(lang: str, lines: list[str], *, fixed_form: bool = False) -> int:
    return 1 + _branch_count(lang, lines, fixed_form)


def _units_for_file(diff: FileDiff, file_path: str) -> list[ChangedUnit]:
    lang = language_of(file_path)
    if lang is None:
        return []
    fixed_form = os.path.splitext(file_path)[1].lower() in FIXED_FORM_FORTRAN_EXTS

    visible: list[DiffLine] = [x for x in diff.lines if x.kind != "del"]
    texts = [x.text for x in visible]

    finder: Callable[[list[str]], list[_Span]]
    if lang == "python":
        finder = _python_spans
    elif lang == "c":
        finder = _c_spans
    else:

        def finder(t: list[str]) -> list[_Span]:
            return _fortran_spans(t, fixed_form)

    units: list[ChangedUnit] = []
    for span in finder(texts):
        body = texts[span.start : span.end + 1]
        first = visible[span.start].new_line
        last = visible[span.end].new_line
        churn = sum(
            1
            for x in diff.lines
            if x.kind in ("add", "del") and first <= x.new_line <= last
        )
        if churn == 0:
            continue
        units.append(
            ChangedUnit(
                file_path=file_path,
                unit_name=span.name,
                size_loc=sum(1 for x in body if x.strip()),
                cyclomatic=cyclomatic_proxy(lang, body, fixed_form=fixed_form),
                param_count=span.params,
                churn=churn,
            )
        )
    return units


def extract_units(diff_text: str, file_path: str) -> list[ChangedUnit]:
    """Changed units of `file_path` in `diff_text` (empty for unsupported files)."""

    if language_of(file_path) is None:
        return []
    files, _ = parse_diff_patch(diff_text, default_path=file_path)
    units: list[ChangedUnit] = []
    for f in files:
        if f.path == file_path:
            units.extend(_units_for_file(f, file_path))
    return units


def extract_patch_units(patch: str) -> tuple[list[ChangedUnit], list[str]]:
    """Units across every file section of a multi-file patch."""

    files, warnings = parse_diff_patch(patch)
    units: list[ChangedUnit] = []
    for f in files:
        units.extend(_units_for_file(f, f.path))
    return units, warnings
