"""Turn monthly rows into per-lead waveform cycles."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import InsufficientDataError
from ..metrics.months import MonthBucket, MonthlyRow, month_range, months_between
from ..metrics.registry import BY_ID, ComponentSpec
from .leads import LEADS, Direction, LeadSpec, TrackSpec

logger = logging.getLogger(__name__)

# Width of a cycle whose lead has no period, or whose period is absent.
UNIT_WIDTH = 1.0
# log10(1 + 0 s) would be 0; zero-second periods keep a visible width.
MIN_PERIOD_WIDTH = 0.1

SNAPSHOT_WINDOWS: tuple[int, ...] = (36, 60, 120)

Window = tuple[MonthBucket, MonthBucket]


def amplitude(spec: ComponentSpec, value: float | int) -> float:
    """Spike height: log10(1+v) for counts, |v| * scale for sentiment.

    Other kinds grow with the value and floor at 0; a readability below 0
    draws flat and is flagged by `is_negative`.
    """

    if spec.kind == "count":
        return math.log10(1 + max(0, value))
    if spec.sentiment:
        return abs(float(value)) * spec.scale
    return max(0.0, float(value)) * spec.scale


def is_negative(spec: ComponentSpec, value: float | int) -> bool:
    return spec.kind in ("score", "ratio", "index") and float(value) < 0


def period_width(seconds: float | int | None) -> float:
    if seconds is None:
        return UNIT_WIDTH
    return max(MIN_PERIOD_WIDTH, math.log10(1 + max(0.0, float(seconds))))


@dataclass(frozen=True)
class Spike:
    component_id: str
    direction: Direction
    # Magnitude, always >= 0; troughs are drawn downward.
    amplitude: float
    absent: bool = False
    negative: bool = False

    @property
    def signed_amplitude(self) -> float:
        return self.amplitude if self.direction == "crest" else -self.amplitude


@dataclass(frozen=True)
class Cycle:
    bucket: MonthBucket
    spikes: tuple[Spike, ...]
    width: float
    period_absent: bool = False
    connected: bool = False

    @property
    def crest_amplitudes(self) -> tuple[float, ...]:
        return tuple(s.amplitude for s in self.spikes if s.direction == "crest")

    @property
    def trough_amplitudes(self) -> tuple[float, ...]:
        return tuple(-s.amplitude for s in self.spikes if s.direction == "trough")


@dataclass(frozen=True)
class Track:
    track_id: str
    cycles: tuple[Cycle, ...]


@dataclass(frozen=True)
class Lane:
    lead: LeadSpec
    tracks: tuple[Track, ...]


@dataclass(frozen=True)
class StgDocument:
    repo_slug: str
    window: Window
    lanes: tuple[Lane, ...]

    @property
    def month_count(self) -> int:
        return months_between(*self.window)

    @property
    def months(self) -> tuple[MonthBucket, ...]:
        return tuple(month_range(*self.window))

    @property
    def window_label(self) -> str:
        return f"{self.window[0].label()}..{self.window[1].label()}"


def history_window(rows: Sequence[MonthlyRow]) -> Window:
    if not rows:
        raise InsufficientDataError("no monthly rows: nothing to draw")
    buckets = sorted(r.bucket for r in rows)
    return buckets[0], buckets[-1]


def trailing_window(
    rows: Sequence[MonthlyRow], months: int, warnings: list[str] | None = None
) -> Window:
    """The `months` calendar months ending at the last row's month.

    A window longer than the history is clamped to the full history.
    """

    if months < 1:
        raise ValueError("window must span at least one month")
    first, last = history_window(rows)
    span = months_between(first, last)
    if months > span:
        msg = f"window_clamped requested={months} history={span} repo={first.repo_slug}"
        logger.warning(msg)
        if warnings is not None:
            warnings.append(msg)
        return first, last
    return last.shift(-(months - 1)), last


def _cycle(bucket: MonthBucket, row: MonthlyRow | None, track: TrackSpec) -> Cycle:
    spikes: list[Spike] = []
    for cid, direction in track.components:
        value = row.get(cid) if row is not None else None
        spec = BY_ID[cid]
        if value is None:
            spikes.append(Spike(cid, direction, 0.0, absent=True))
            continue
        a = amplitude(spec, value)
        if not math.isfinite(a):
            spikes.append(Spike(cid, direction, 0.0, absent=True))
            continue
        spikes.append(
            Spike(cid, direction, a, negative=is_negative(spec, value))
        )

    if track.period_component is None:
        return Cycle(bucket, tuple(spikes), UNIT_WIDTH)
    seconds = row.get(track.period_component) if row is not None else None
    return Cycle(
        bucket,
        tuple(spikes),
        period_width(seconds),
        period_absent=seconds is None,
    )


def build_stg(
    rows: Sequence[MonthlyRow],
    window: Window,
    leads: Sequence[LeadSpec] = LEADS,
) -> StgDocument:
    """One cycle per month of `window` on every lead track.

    Rows outside the window are ignored; window months without a row draw
    as absent.
    """

    start, end = window
    if end < start or months_between(start, end) < 1:
        raise InsufficientDataError("empty window")
    by_month = {(r.bucket.year, r.bucket.month): r for r in rows}
    buckets = list(month_range(start, end))
    slug = start.repo_slug
    lanes = tuple(
        Lane(
            lead,
            tuple(
                Track(
                    t.track_id,
                    tuple(_cycle(b, by_month.get((b.year, b.month)), t) for b in buckets),
                )
                for t in lead.tracks
            ),
        )
        for lead in leads
    )
    return StgDocument(repo_slug=slug, window=(start, end), lanes=lanes)
