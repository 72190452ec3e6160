"""Participant-level attributes: gender, country, affiliation."""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from typing import Literal

from ..githost.records import UserProfile
from .tables import UNKNOWN_COUNTRY, CountryTable, GenderTable

GenderSide = Literal["female", "male", "unknown"]

UNAFFILIATED = "unaffiliated"

_SIDE: dict[str, GenderSide] = {
    "female": "female",
    "mostly_female": "female",
    "male": "male",
    "mostly_male": "male",
}
_NAME_TOKEN_RE = re.compile(r"[^\W\d_]+")
_LOCATION_SPLIT_RE = re.compile(r"[,/;|]| - ")


def first_name(display_name: str) -> str:
    m = _NAME_TOKEN_RE.search(display_name or "")
    return m.group(0) if m else ""


def gender_side(name: str, table: GenderTable) -> GenderSide:
    """Bucket a display name: mostly_* join their side, andy is unknown."""

    token = first_name(name)
    if not token:
        return "unknown"
    return _SIDE.get(table.category(token), "unknown")


def ratio_of_sides(
    sides: Iterable[GenderSide], numerator: Literal["female", "male"] = "female"
) -> float | None:
    female = male = 0
    for s in sides:
        if s == "female":
            female += 1
        elif s == "male":
            male += 1
    denom = female + male
    if denom == 0:
        return None
    return (female if numerator == "female" else male) / denom


def gender_ratio(
    participants: Iterable[str],
    table: GenderTable,
    *,
    numerator: Literal["female", "male"] = "female",
) -> float | None:
    """female / (female + male) over distinct participants; unknowns excluded."""

    return ratio_of_sides(
        (gender_side(p, table) for p in sorted(set(participants))), numerator
    )


def resolve_country(location: str | None, table: CountryTable) -> str | None:
    """Full phrase first, then comma-separated parts right to left."""

    if not location or not location.strip():
        return None
    hit = table.lookup(location)
    if hit != UNKNOWN_COUNTRY:
        return hit
    parts = [p.strip() for p in _LOCATION_SPLIT_RE.split(location) if p.strip()]
    for part in reversed(parts):
        hit = table.lookup(part)
        if hit != UNKNOWN_COUNTRY:
            return hit
    return None


def location_coverage(profiles: Sequence[UserProfile], table: CountryTable) -> int:
    countries = {resolve_country(p.location_raw, table) for p in profiles}
    countries.discard(None)
    return len(countries)


def affiliation_of(email: str, generic_domains: frozenset[str]) -> str:
    """Email domain, or `unaffiliated` for generic mail providers."""

    _, at, domain = (email or "").strip().lower().rpartition("@")
    if not at or not domain or domain in generic_domains:
        return UNAFFILIATED
    if any(domain.endswith("." + g) for g in generic_domains):
        return UNAFFILIATED
    return domain
