"""Comment scorers: sentiment, usefulness, toxicity.

Two implementations share the `TextScorer` protocol: the bundled
deterministic lexicon scorer, and an external program speaking NDJSON over
stdin/stdout (`{"id", "text"}` in, `{"id", "sentiment", "useful", "toxic"}`
out).
"""

from __future__ import annotations

import json
import logging
import math
import os
import re
import subprocess
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Protocol

from ..artifacts import project_data_dir, write_ndjson
from ..errors import BlockedError, ExecFailureError, MissingInputError, SchemaMismatchError
from ..githost.records import ID_SPACES, CommentKey, CommentRecord
from .tables import bundled_word_list
from .text import strip_markup

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 64
SCORES_FILE = "scores.ndjson"


@dataclass(frozen=True)
class TextScore:
    sentiment: float
    useful: bool
    toxic: bool

    def __post_init__(self) -> None:
        if math.isnan(self.sentiment) or not -1.0 <= self.sentiment <= 1.0:
            raise ValueError(f"sentiment out of [-1,1]: {self.sentiment}")


NEUTRAL = TextScore(sentiment=0.0, useful=False, toxic=False)


class ScorerError(ExecFailureError):
    """The scorer failed for a batch of texts."""


class TextScorer(Protocol):
    name: str

    def score_batch(self, items: Sequence[tuple[int, str]]) -> dict[int, TextScore]:
        """Score already-stripped texts keyed by comment id."""
        ...


_TOKEN_RE = re.compile(r"[a-z][a-z']*")
_SENTENCE_RE = re.compile(r"(?:^|[.!?]\s+|\n)\s*([A-Za-z]+)")
_BACKTICK_RE = re.compile(r"`[^`\n]+`")
_PATH_RE = re.compile(r"(?:^|\s)[\w.-]*/[\w./-]+|\b[\w-]+\.(?:py|c|h|cpp|hpp|js|ts|go|rs|java|f90|md|toml|yml|yaml|json)\b")
_IDENT_RE = re.compile(r"\b[a-z]+_[a-z0-9_]+\b|\b[a-z]+[A-Z][A-Za-z0-9]*\b|\b\w+\(\)")


@dataclass(frozen=True)
class LexiconScorer:
    """Deterministic word-list scorer.

    - sentiment: mean of +1/-1 over words found in the positive/negative lists
    - useful: code reference, path, identifier or a sentence-initial
      imperative verb
    - toxic: any word from the profanity list
    """

    name: str = "bundled"
    positive: frozenset[str] = field(
        default_factory=lambda: bundled_word_list("positive_words.txt")
    )
    negative: frozenset[str] = field(
        default_factory=lambda: bundled_word_list("negative_words.txt")
    )
    profanity: frozenset[str] = field(
        default_factory=lambda: bundled_word_list("profanity.txt")
    )
    imperatives: frozenset[str] = field(
        default_factory=lambda: bundled_word_list("imperative_verbs.txt")
    )

    def score(self, text: str) -> TextScore:
        if not text.strip():
            return NEUTRAL
        tokens = _TOKEN_RE.findall(text.lower())
        signs = [1 if t in self.positive else -1 for t in tokens if t in self.positive or t in self.negative]
        sentiment = sum(signs) / len(signs) if signs else 0.0
        toxic = any(t in self.profanity for t in tokens)
        useful = bool(
            _BACKTICK_RE.search(text)
            or _PATH_RE.search(text)
            or _IDENT_RE.search(text)
            or any(w.lower() in self.imperatives for w in _SENTENCE_RE.findall(text))
        )
        return TextScore(sentiment=sentiment, useful=useful, toxic=toxic)

    def score_batch(self, items: Sequence[tuple[int, str]]) -> dict[int, TextScore]:
        return {cid: self.score(text) for cid, text in items}


def _parse_external_line(line: str) -> tuple[int, TextScore]:
    data = json.loads(line)
    if not isinstance(data, dict):
        raise ValueError("scorer output line must be a JSON object")
    cid = data.get("id")
    sentiment = data.get("sentiment")
    useful = data.get("useful")
    toxic = data.get("toxic")
    if isinstance(cid, bool) or not isinstance(cid, int):
        raise ValueError("scorer output `id` must be an integer")
    if isinstance(sentiment, bool) or not isinstance(sentiment, (int, float)):
        raise ValueError("scorer output `sentiment` must be a number")
    if not isinstance(useful, bool) or not isinstance(toxic, bool):
        raise ValueError("scorer output `useful`/`toxic` must be booleans")
    return cid, TextScore(float(sentiment), useful, toxic)


@dataclass(frozen=True)
class ExternalScorer:
    """Runs `command` once per batch; one NDJSON line in, one line out per text."""

    command: tuple[str, ...]
    timeout_s: int = 600
    name: str = "external"

    def __post_init__(self) -> None:
        if not self.command:
            raise BlockedError("external scorer needs a non-empty `command`")

    def score_batch(self, items: Sequence[tuple[int, str]]) -> dict[int, TextScore]:
        payload = "".join(
            json.dumps({"id": cid, "text": text}, ensure_ascii=False) + "\n"
            for cid, text in items
        )
        try:
            p = subprocess.run(  # noqa: S603
                list(self.command),
                input=payload.encode("utf-8"),
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                check=False,
                timeout=self.timeout_s,
            )
        except FileNotFoundError as exc:
            raise BlockedError(f"scorer command not found: {self.command[0]}") from exc
        except subprocess.TimeoutExpired as exc:
            raise ScorerError(f"scorer timed out after {self.timeout_s}s") from exc
        if p.returncode != 0:
            stderr = p.stderr.decode("utf-8", errors="replace").strip()
            raise ScorerError(f"scorer exited {p.returncode}: {stderr[:500]}")

        out: dict[int, TextScore] = {}
        for line in p.stdout.decode("utf-8", errors="replace").splitlines():
            if not line.strip():
                continue
            try:
                cid, score = _parse_external_line(line)
            except ValueError as exc:
                raise ScorerError(f"invalid scorer output: {exc}") from exc
            out[cid] = score
        missing = sorted({cid for cid, _ in items} - set(out))
        if missing:
            raise ScorerError(f"scorer returned no result for ids {missing[:5]}")
        return out


def score_text(body: str, scorer: TextScorer) -> TextScore:
    text = strip_markup(body)
    return scorer.score_batch([(0, text)])[0]


@dataclass(frozen=True)
class ScoringResult:
    scores: Mapping[CommentKey, TextScore]
    failed: frozenset[CommentKey] = frozenset()
    warnings: tuple[str, ...] = ()


def score_comments(
    comments: Sequence[CommentRecord],
    scorer: TextScorer,
    *,
    workers: int = 4,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> ScoringResult:
    """Score every comment body in a bounded pool, merged by comment key.

    Scorers see positional integer ids; results map back to `CommentKey`.
    A failing batch marks its comments as failed instead of aborting.
    """

    keys = sorted({c.key: c for c in comments}.items(), key=lambda kv: kv[0])
    items = [(i, strip_markup(c.body)) for i, (_, c) in enumerate(keys)]
    batches = [items[i : i + batch_size] for i in range(0, len(items), max(1, batch_size))]

    def run(batch: list[tuple[int, str]]) -> tuple[dict[int, TextScore], str | None]:
        try:
            return scorer.score_batch(batch), None
        except ScorerError as exc:
            return {}, str(exc)

    scores: dict[CommentKey, TextScore] = {}
    failed: set[CommentKey] = set()
    warnings: list[str] = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        for batch, (got, err) in zip(batches, ex.map(run, batches), strict=True):
            if err is not None:
                batch_keys = [keys[i][0] for i, _ in batch]
                space, first = batch_keys[0]
                msg = (
                    f"scorer_failure scorer={scorer.name} first={space}:{first} "
                    f"count={len(batch_keys)} error={err}"
                )
                logger.warning(msg)
                warnings.append(msg)
                failed.update(batch_keys)
                continue
            scores.update((keys[i][0], s) for i, s in got.items())
    return ScoringResult(
        scores=dict(sorted(scores.items())),
        failed=frozenset(failed),
        warnings=tuple(warnings),
    )


def scores_path(data_dir: str, slug: str) -> str:
    return os.path.join(project_data_dir(data_dir, slug), SCORES_FILE)


def write_scores(
    path: str, comments: Sequence[CommentRecord], scores: Mapping[CommentKey, TextScore]
) -> int:
    by_key = {c.key: c for c in comments}
    return write_ndjson(
        path,
        (
            {
                "id_space": key[0],
                "comment_id": key[1],
                "parent_kind": by_key[key].parent_kind,
                "sentiment": s.sentiment,
                "useful": s.useful,
                "toxic": s.toxic,
            }
            for key, s in sorted(scores.items())
            if key in by_key
        ),
    )


def load_scores(path: str) -> dict[CommentKey, TextScore]:
    if not os.path.isfile(path):
        raise MissingInputError(f"comment scores not found: {path} (run `metrics` first)")
    out: dict[CommentKey, TextScore] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                space = data["id_space"]
                if space not in ID_SPACES:
                    raise ValueError(f"unknown id_space {space!r}")
                out[(space, int(data["comment_id"]))] = TextScore(
                    float(data["sentiment"]), bool(data["useful"]), bool(data["toxic"])
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaMismatchError(f"{path}:{lineno}: invalid score record") from exc
    return out
