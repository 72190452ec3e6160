"""Software sustainability graph: lead registry, layout and SVG output."""

from .build import (
    SNAPSHOT_WINDOWS,
    Cycle,
    Lane,
    Spike,
    StgDocument,
    amplitude,
    build_stg,
    history_window,
    period_width,
    trailing_window,
)
from .leads import LEAD_IDS, LEADS, LeadSpec, TrackSpec
from .render import StyleConfig, render_svg

__all__ = [
    "LEADS",
    "LEAD_IDS",
    "SNAPSHOT_WINDOWS",
    "Cycle",
    "Lane",
    "LeadSpec",
    "Spike",
    "StgDocument",
    "StyleConfig",
    "TrackSpec",
    "amplitude",
    "build_stg",
    "history_window",
    "period_width",
    "render_svg",
    "trailing_window",
]
