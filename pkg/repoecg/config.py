"""repoecg.toml loading and validation.

A missing file means built-in defaults. Unknown sections or keys are
rejected so that typos never silently fall back to defaults.
"""

from __future__ import annotations

import os
import tomllib
from collections.abc import Mapping
from dataclasses import MISSING, dataclass, field, fields
from typing import Literal, cast

from .coerce import coerce_str_object_dict
from .commits.dmm import RiskThresholds
from .errors import BlockedError, ExecFailureError
from .githost.client import DEFAULT_API_BASE_URL, PER_PAGE
from .githost.fetch import validate_slug
from .stg.render import StyleConfig

CONFIG_FILE = "repoecg.toml"


@dataclass(frozen=True)
class PathsConfig:
    data_dir: str = "data"
    out_dir: str = "out"


@dataclass(frozen=True)
class ApiConfig:
    base_url: str = DEFAULT_API_BASE_URL
    concurrency: int = 4
    per_page: int = PER_PAGE
    max_retries: int = 3
    timeout_s: int = 30


@dataclass(frozen=True)
class ProjectConfig:
    slug: str
    clone: str | None = None
    branch: str | None = None


@dataclass(frozen=True)
class ScorerConfig:
    kind: Literal["bundled", "external"] = "bundled"
    command: tuple[str, ...] = ()
    workers: int = 4


@dataclass(frozen=True)
class EnrichConfig:
    gender_table: str = ""
    country_table: str = ""
    generic_domains: str = ""
    gender_ratio: Literal["female", "male"] = "female"


@dataclass(frozen=True)
class WordscoreConfig:
    alpha: float = 0.1
    ngram_max: int = 2
    min_count: int = 5
    top_n: int = 10


@dataclass(frozen=True)
class Config:
    paths: PathsConfig = field(default_factory=PathsConfig)
    api: ApiConfig = field(default_factory=ApiConfig)
    projects: tuple[ProjectConfig, ...] = ()
    scorer: ScorerConfig = field(default_factory=ScorerConfig)
    thresholds: RiskThresholds = field(default_factory=RiskThresholds)
    enrich: EnrichConfig = field(default_factory=EnrichConfig)
    style: StyleConfig = field(default_factory=StyleConfig)
    wordscore: WordscoreConfig = field(default_factory=WordscoreConfig)
    source: str | None = None

    def project(self, slug: str) -> ProjectConfig:
        for p in self.projects:
            if p.slug == slug:
                return p
        return ProjectConfig(slug=slug)

    @property
    def project_slugs(self) -> tuple[str, ...]:
        return tuple(p.slug for p in self.projects)


def _check_type(path: str, section: str, key: str, value: object, expected: type) -> None:
    ok = isinstance(value, expected) and not (
        expected in (int, float) and isinstance(value, bool)
    )
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        ok = True
    if not ok:
        raise BlockedError(
            f"Invalid config {path!r}: [{section}] {key} must be {expected.__name__}"
        )


def _section(path: str, name: str, raw: Mapping[str, object], cls: type) -> object:
    """Build dataclass `cls` from a TOML table, rejecting unknown keys."""

    known = {f.name: f for f in fields(cls)}
    kwargs: dict[str, object] = {}
    for key, value in raw.items():
        f = known.get(key)
        if f is None:
            raise BlockedError(f"Unknown config key in {path!r}: [{name}] {key}")
        # Required fields (no default) are strings.
        default = "" if f.default is MISSING else f.default
        if isinstance(default, bool):
            _check_type(path, name, key, value, bool)
        elif isinstance(default, int):
            _check_type(path, name, key, value, int)
        elif isinstance(default, float):
            _check_type(path, name, key, value, float)
            value = float(cast(float, value))
        elif isinstance(default, str) or default is None:
            _check_type(path, name, key, value, str)
        elif isinstance(default, tuple):
            if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
                raise BlockedError(
                    f"Invalid config {path!r}: [{name}] {key} must be a list of strings"
                )
            value = tuple(value)
        kwargs[key] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise BlockedError(f"Invalid config {path!r}: [{name}]: {exc}") from exc


def _projects(path: str, raw: object) -> tuple[ProjectConfig, ...]:
    if not isinstance(raw, list):
        raise BlockedError(f"Invalid config {path!r}: [[projects]] must be an array of tables")
    out: list[ProjectConfig] = []
    seen: set[str] = set()
    for item in raw:
        if not isinstance(item, dict):
            raise BlockedError(f"Invalid config {path!r}: [[projects]] entries must be tables")
        if "slug" not in item:
            raise BlockedError(f"Invalid config {path!r}: [[projects]] entry without slug")
        p = cast(ProjectConfig, _section(path, "projects", coerce_str_object_dict(item), ProjectConfig))
        try:
            validate_slug(p.slug)
        except ExecFailureError as exc:
            raise BlockedError(f"Invalid config {path!r}: {exc}") from exc
        if p.slug in seen:
            raise BlockedError(f"Duplicate project in {path!r}: {p.slug}")
        seen.add(p.slug)
        out.append(p)
    return tuple(out)


_SECTIONS: dict[str, type] = {
    "paths": PathsConfig,
    "api": ApiConfig,
    "scorer": ScorerConfig,
    "thresholds": RiskThresholds,
    "enrich": EnrichConfig,
    "style": StyleConfig,
    "wordscore": WordscoreConfig,
}


def parse_config(raw: Mapping[str, object], path: str = "<config>") -> Config:
    kwargs: dict[str, object] = {"source": path}
    for name, value in raw.items():
        if name == "projects":
            kwargs["projects"] = _projects(path, value)
            continue
        cls = _SECTIONS.get(name)
        if cls is None:
            raise BlockedError(f"Unknown config section in {path!r}: [{name}]")
        if not isinstance(value, dict):
            raise BlockedError(f"Invalid config {path!r}: [{name}] must be a table")
        kwargs[name] = _section(path, name, coerce_str_object_dict(value), cls)

    cfg = Config(**kwargs)  # type: ignore[arg-type]
    if cfg.scorer.kind not in ("bundled", "external"):
        raise BlockedError(f"Invalid config {path!r}: [scorer] kind must be bundled or external")
    if cfg.scorer.kind == "external" and not cfg.scorer.command:
        raise BlockedError(f"Invalid config {path!r}: [scorer] external kind needs command")
    if cfg.enrich.gender_ratio not in ("female", "male"):
        raise BlockedError(f"Invalid config {path!r}: [enrich] gender_ratio must be female or male")
    if cfg.api.concurrency < 1 or cfg.api.per_page < 1 or cfg.scorer.workers < 1:
        raise BlockedError(f"Invalid config {path!r}: concurrency, per_page and workers must be >= 1")
    return cfg


def load_config(path: str | None = None) -> Config:
    """Read `path`, or ./repoecg.toml when it exists, else defaults."""

    explicit = path is not None
    target = path or os.path.join(os.getcwd(), CONFIG_FILE)
    try:
        with open(target, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError as exc:
        if explicit:
            raise BlockedError(f"Config file not found: {target!r}") from exc
        return Config()
    except OSError as exc:
        raise BlockedError(
            f"Failed to read config file: {target!r}: {type(exc).__name__}: {exc}"
        ) from exc
    except tomllib.TOMLDecodeError as exc:
        raise BlockedError(f"Invalid config TOML: {target!r}: {exc}") from exc
    return parse_config(raw, target)
