"""Deterministic SVG rendering of a sustainability graph."""

from __future__ import annotations

from dataclasses import dataclass

from ..metrics.registry import BY_ID
from ..rendering import fmt3 as _f
from ..rendering import template_env
from .build import Cycle, StgDocument


@dataclass(frozen=True)
class StyleConfig:
    lane_height: float = 60.0
    month_width: float = 40.0
    label_width: float = 170.0
    clip_amplitude: float = 4.0
    font_family: str = "monospace"
    font_size: int = 11
    crest_color: str = "#1f6feb"
    trough_color: str = "#cf222e"
    period_color: str = "#8c959f"
    absent_color: str = "#d0d7de"

    def __post_init__(self) -> None:
        if min(self.lane_height, self.month_width, self.clip_amplitude) <= 0:
            raise ValueError("lane_height, month_width and clip_amplitude must be positive")
        if self.label_width < 0 or self.font_size <= 0:
            raise ValueError("label_width must be >= 0 and font_size > 0")


_MARGIN_TOP = 36.0
_AXIS_HEIGHT = 28.0
_MARGIN_RIGHT = 12.0


def _cycle_shapes(
    cycle: Cycle,
    x0: float,
    cycle_px: float,
    baseline: float,
    px_per_amp: float,
    clip: float,
) -> list[dict[str, object]]:
    shapes: list[dict[str, object]] = []
    n = len(cycle.spikes)
    step = cycle_px / n
    for i, spike in enumerate(cycle.spikes):
        a0 = x0 + i * step
        a1 = a0 + step
        label = BY_ID[spike.component_id].label
        if spike.absent or spike.amplitude == 0.0:
            if spike.absent:
                cls, shown = "absent", "absent"
            elif spike.negative:
                cls, shown = "zero negative", "below 0"
            else:
                cls, shown = "zero", "0"
            shapes.append(
                {
                    "kind": "line",
                    "cls": cls,
                    "x1": _f(a0),
                    "x2": _f(a1),
                    "y": _f(baseline),
                    "title": f"{cycle.bucket.label()} {label}: {shown}",
                }
            )
            continue
        clipped = spike.amplitude > clip
        a = min(spike.amplitude, clip)
        sign = -1.0 if spike.direction == "crest" else 1.0
        apex_y = baseline + sign * a * px_per_amp
        classes = [spike.direction]
        if spike.negative:
            classes.append("negative")
        if clipped:
            classes.append("clipped")
        shapes.append(
            {
                "kind": "spike",
                "cls": " ".join(classes),
                "points": f"{_f(a0)},{_f(baseline)} {_f((a0 + a1) / 2)},{_f(apex_y)} {_f(a1)},{_f(baseline)}",
                "clip_x": _f((a0 + a1) / 2) if clipped else None,
                "clip_y": _f(apex_y) if clipped else None,
                "title": f"{cycle.bucket.label()} {label}: {spike.amplitude:.3f}",
            }
        )
    if cycle.period_absent:
        shapes.append(
            {
                "kind": "period",
                "cls": "period absent",
                "x1": _f(x0),
                "x2": _f(x0 + cycle_px),
                "y": _f(baseline),
            }
        )
    return shapes


def render_svg(doc: StgDocument, style: StyleConfig | None = None) -> bytes:
    style = style or StyleConfig()
    months = doc.months
    n_months = len(months)
    max_width = max(
        (c.width for lane in doc.lanes for t in lane.tracks for c in t.cycles),
        default=1.0,
    )
    plot_x0 = style.label_width
    plot_w = n_months * style.month_width
    width = plot_x0 + plot_w + _MARGIN_RIGHT
    height = _MARGIN_TOP + len(doc.lanes) * style.lane_height + _AXIS_HEIGHT

    lanes: list[dict[str, object]] = []
    for li, lane in enumerate(doc.lanes):
        lane_top = _MARGIN_TOP + li * style.lane_height
        track_h = style.lane_height / len(lane.tracks)
        px_per_amp = (track_h / 2) / style.clip_amplitude
        tracks: list[dict[str, object]] = []
        for ti, track in enumerate(lane.tracks):
            baseline = lane_top + ti * track_h + track_h / 2
            shapes: list[dict[str, object]] = []
            for mi, cycle in enumerate(track.cycles):
                slot_x = plot_x0 + mi * style.month_width
                cycle_px = style.month_width * cycle.width / max_width
                shapes.extend(
                    _cycle_shapes(
                        cycle, slot_x, cycle_px, baseline, px_per_amp, style.clip_amplitude
                    )
                )
            tracks.append(
                {
                    "label": track.track_id,
                    "baseline": _f(baseline),
                    "shapes": shapes,
                }
            )
        lanes.append(
            {
                "lead_id": lane.lead.lead_id,
                "label": lane.lead.label,
                "top": _f(lane_top),
                "label_y": _f(lane_top + style.lane_height / 2),
                "tracks": tracks,
            }
        )

    axis_y = _MARGIN_TOP + len(doc.lanes) * style.lane_height
    ticks: list[dict[str, object]] = []
    for mi, m in enumerate(months):
        text = None
        if mi == 0 or m.month == 1:
            text = m.label() if mi == 0 else f"{m.year:04d}"
        ticks.append({"x": _f(plot_x0 + mi * style.month_width), "text": text})

    out = template_env().get_template("stg.svg.j2").render(
        doc=doc,
        style=style,
        width=_f(width),
        height=_f(height),
        plot_x0=_f(plot_x0),
        plot_x1=_f(plot_x0 + plot_w),
        title_y=_f(_MARGIN_TOP / 2),
        axis_y=_f(axis_y),
        tick_y2=_f(axis_y + 5),
        tick_text_y=_f(axis_y + 5 + style.font_size),
        label_x=_f(style.label_width - 8),
        track_label_x=_f(style.label_width - 4),
        lanes=lanes,
        ticks=ticks,
    )
    return out.encode("utf-8")
