"""Calendar-month buckets (UTC) and monthly rows."""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .registry import BY_ID


@dataclass(frozen=True, order=True)
class MonthBucket:
    repo_slug: str
    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"invalid month: {self.month}")

    @classmethod
    def of(cls, repo_slug: str, ts: int) -> MonthBucket:
        dt = datetime.fromtimestamp(ts, tz=timezone.utc)
        return cls(repo_slug, dt.year, dt.month)

    @classmethod
    def parse(cls, repo_slug: str, text: str) -> MonthBucket:
        year_s, _, month_s = text.strip().partition("-")
        return cls(repo_slug, int(year_s), int(month_s))

    @property
    def index(self) -> int:
        return self.year * 12 + (self.month - 1)

    def label(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def shift(self, months: int) -> MonthBucket:
        i = self.index + months
        return MonthBucket(self.repo_slug, i // 12, i % 12 + 1)


def month_range(start: MonthBucket, end: MonthBucket) -> Iterator[MonthBucket]:
    """Inclusive range of months."""

    for i in range(start.index, end.index + 1):
        yield MonthBucket(start.repo_slug, i // 12, i % 12 + 1)


def months_between(start: MonthBucket, end: MonthBucket) -> int:
    return end.index - start.index + 1


@dataclass(frozen=True)
class MonthlyRow:
    """One project-month; a missing key or None means absent (not zero)."""

    bucket: MonthBucket
    values: Mapping[str, float | int | None] = field(default_factory=dict)

    def __post_init__(self) -> None:
        unknown = [k for k in self.values if k not in BY_ID]
        if unknown:
            raise KeyError(f"unknown components: {', '.join(sorted(unknown))}")

    def get(self, component_id: str) -> float | int | None:
        return self.values.get(component_id)

    def merged(self, extra: Mapping[str, float | int | None]) -> MonthlyRow:
        return MonthlyRow(self.bucket, {**self.values, **extra})
