"""fighting_words.csv and the frequency / z-score scatter plot."""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Sequence

from ..artifacts import atomic_write_text
from ..rendering import fmt3, template_env
from .fighting import TokenZScore

CSV_COLUMNS = ("token", "count_useful", "count_not_useful", "log_odds", "z", "top10_class")

_W = 640.0
_H = 420.0
_PAD_L = 56.0
_PAD_R = 16.0
_PAD_T = 32.0
_PAD_B = 44.0


def render_fighting_words_csv(scores: Sequence[TokenZScore]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s in scores:
        w.writerow(
            [
                s.token,
                s.count_useful,
                s.count_not_useful,
                format(s.log_odds, ".10g"),
                format(s.z, ".10g"),
                s.top_class,
            ]
        )
    return buf.getvalue()


def write_fighting_words_csv(path: str, scores: Sequence[TokenZScore]) -> None:
    atomic_write_text(path, render_fighting_words_csv(scores))


def render_scatter_svg(scores: Sequence[TokenZScore], title: str) -> bytes:
    """x = log10 of combined frequency, y = z; top-N tokens of each class labelled."""

    xs = [math.log10(s.total) for s in scores]
    zs = [s.z for s in scores]
    x_max = max(xs, default=1.0) or 1.0
    z_abs = max((abs(z) for z in zs), default=1.0) or 1.0
    plot_w = _W - _PAD_L - _PAD_R
    plot_h = _H - _PAD_T - _PAD_B
    mid_y = _PAD_T + plot_h / 2

    def px(x: float) -> float:
        return _PAD_L + plot_w * x / x_max

    def py(z: float) -> float:
        return mid_y - (plot_h / 2) * z / z_abs

    points = [
        {
            "x": fmt3(px(x)),
            "y": fmt3(py(s.z)),
            "cls": s.top_class or "other",
            "label": s.token if s.top_class else None,
            "title": f"{s.token}: z={s.z:.3f} n={s.total}",
        }
        for s, x in zip(scores, xs, strict=True)
    ]
    out = template_env().get_template("scatter.svg.j2").render(
        title=title,
        width=fmt3(_W),
        height=fmt3(_H),
        x0=fmt3(_PAD_L),
        x1=fmt3(_W - _PAD_R),
        y_top=fmt3(_PAD_T),
        y_bottom=fmt3(_PAD_T + plot_h),
        mid_y=fmt3(mid_y),
        z_abs=f"{z_abs:.2f}",
        x_max=f"{10 ** x_max:.0f}",
        title_y=fmt3(_PAD_T / 2 + 4),
        x_label_y=fmt3(_H - 10),
        points=points,
    )
    return out.encode("utf-8")
