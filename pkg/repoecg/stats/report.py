"""comparison.csv and the cross-project text matrix."""

from __future__ import annotations

import csv
import io
from collections.abc import Mapping, Sequence

from ..artifacts import atomic_write_text
from ..rendering import template_env
from .compare import PairwiseComparison

CSV_COLUMNS = ("a", "b", "delta", "p_raw", "p_adjusted", "stars")
LEGEND = "*: p-value<0.05, **: p-value<0.01, ***: p-value<0.001 (Holm-adjusted)"


def anonymized_names(slugs: Sequence[str]) -> dict[str, str]:
    return {s: f"P{i}" for i, s in enumerate(slugs, start=1)}


def _num(v: float | None) -> str:
    return "" if v is None else format(v, ".10g")


def render_comparison_csv(
    comparisons: Sequence[PairwiseComparison], names: Mapping[str, str] | None = None
) -> str:
    names = names or {}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in comparisons:
        w.writerow(
            [
                names.get(c.repo_a, c.repo_a),
                names.get(c.repo_b, c.repo_b),
                _num(c.cliffs_delta),
                _num(c.p_raw),
                _num(c.p_adjusted),
                c.stars,
            ]
        )
    return buf.getvalue()


def write_comparison_csv(
    path: str,
    comparisons: Sequence[PairwiseComparison],
    names: Mapping[str, str] | None = None,
) -> None:
    atomic_write_text(path, render_comparison_csv(comparisons, names))


def format_comparison_table(
    slugs: Sequence[str],
    comparisons: Sequence[PairwiseComparison],
    names: Mapping[str, str] | None = None,
) -> str:
    """Row project vs column project: Cliff's delta with significance stars."""

    names = names or {}
    by_pair = {(c.repo_a, c.repo_b): c for c in comparisons}
    labels = [names.get(s, s) for s in slugs]

    def cell(a: str, b: str) -> str:
        if a == b:
            return "-"
        c = by_pair.get((a, b))
        if c is None:
            return ""
        return f"{c.cliffs_delta:.2f}{c.stars}"

    matrix = [[cell(a, b) for b in slugs] for a in slugs]
    width = max([len(x) for x in labels] + [len(x) for row in matrix for x in row] + [1])
    header = [" " * width, *(x.rjust(width) for x in labels)]
    rows = [
        [label.ljust(width), *(x.rjust(width) for x in row)]
        for label, row in zip(labels, matrix, strict=True)
    ]
    return template_env().get_template("comparison.txt.j2").render(
        header=header, rows=rows, legend=LEGEND
    )
