"""Offline lookup tables shipped under `repoecg/resources/`.

Every table can be replaced by a file path from `[enrich]` in the config.
Lines starting with `#` are comments; keys are matched case-insensitively.
"""

from __future__ import annotations

import csv
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ..errors import MissingInputError

RESOURCES_DIR = Path(__file__).resolve().parents[1] / "resources"

GENDER_CATEGORIES: tuple[str, ...] = (
    "female",
    "male",
    "mostly_female",
    "mostly_male",
    "andy",
    "unknown",
)
UNKNOWN_COUNTRY = "Unknown"


def resource_path(name: str) -> Path:
    return RESOURCES_DIR / name


def _data_lines(path: Path) -> Iterator[str]:
    try:
        with path.open(encoding="utf-8") as fh:
            for line in fh:
                if line.strip() and not line.lstrip().startswith("#"):
                    yield line.rstrip("\n")
    except FileNotFoundError as exc:
        raise MissingInputError(f"table not found: {path}") from exc


def _read_tsv(path: Path) -> dict[str, str]:
    out: dict[str, str] = {}
    for row in csv.reader(_data_lines(path), delimiter="\t"):
        if len(row) < 2:
            continue
        out[row[0].strip().lower()] = row[1].strip()
    return out


def read_word_list(path: Path) -> frozenset[str]:
    return frozenset(line.strip().lower() for line in _data_lines(path))


@dataclass(frozen=True)
class GenderTable:
    """First name -> gender category; anything missing is `unknown`."""

    names: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        bad = sorted({v for v in self.names.values() if v not in GENDER_CATEGORIES})
        if bad:
            raise ValueError(f"unknown gender categories: {', '.join(bad)}")

    def category(self, first_name: str) -> str:
        return self.names.get(first_name.strip().lower(), "unknown")


@dataclass(frozen=True)
class CountryTable:
    """Location phrase -> country name; anything missing is `Unknown`."""

    phrases: Mapping[str, str] = field(default_factory=dict)

    def lookup(self, phrase: str) -> str:
        return self.phrases.get(phrase.strip().lower(), UNKNOWN_COUNTRY)


def load_gender_table(path: str | None = None) -> GenderTable:
    src = Path(path) if path else resource_path("gender_names.tsv")
    return GenderTable(_read_tsv(src))


def load_country_table(path: str | None = None) -> CountryTable:
    src = Path(path) if path else resource_path("countries.tsv")
    return CountryTable(_read_tsv(src))


@lru_cache(maxsize=None)
def bundled_word_list(name: str) -> frozenset[str]:
    return read_word_list(resource_path(name))


def load_generic_domains(path: str | None = None) -> frozenset[str]:
    if path:
        return read_word_list(Path(path))
    return bundled_word_list("generic_mail_domains.txt")
