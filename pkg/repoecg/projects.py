"""Run one step over several projects in a bounded pool."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass

from .errors import ExitCode, RepoEcgError

logger = logging.getLogger(__name__)

ProjectResult = dict[str, object]


@dataclass(frozen=True)
class ProjectOutcome:
    slug: str
    ok: bool
    result: ProjectResult
    error_kind: str = ""
    error_message: str = ""
    exit_code: int = int(ExitCode.SUCCESS)
    # Kept for re-raising the first failure with its own exit code.
    error: RepoEcgError | None = None

    def to_json(self) -> dict[str, object]:
        out: dict[str, object] = {"slug": self.slug, "ok": self.ok}
        if self.ok:
            out["result"] = self.result
        else:
            out["error"] = {
                "kind": self.error_kind,
                "message": self.error_message,
                "exit_code": self.exit_code,
            }
        return out


def run_for_projects(
    slugs: Sequence[str],
    fn: Callable[[str], ProjectResult],
    *,
    max_workers: int = 4,
) -> list[ProjectOutcome]:
    """Run `fn(slug)` for every slug; outcomes come back in `slugs` order.

    Application errors are captured per project; anything else propagates.
    """

    if not slugs:
        return []
    workers = max(1, min(max_workers, len(slugs)))
    outcomes: dict[str, ProjectOutcome] = {}

    with ThreadPoolExecutor(max_workers=workers) as ex:
        futs = {ex.submit(fn, s): s for s in slugs}
        for fut in as_completed(futs):
            slug = futs[fut]
            try:
                outcomes[slug] = ProjectOutcome(slug=slug, ok=True, result=fut.result())
            except RepoEcgError as exc:
                logger.warning("%s: %s", slug, exc)
                outcomes[slug] = ProjectOutcome(
                    slug=slug,
                    ok=False,
                    result={},
                    error_kind=type(exc).__name__,
                    error_message=str(exc),
                    exit_code=int(exc.exit_code),
                    error=exc,
                )

    return [outcomes[s] for s in slugs]


def raise_first_failure(
    outcomes: Sequence[ProjectOutcome],
    *,
    tolerate: tuple[type[RepoEcgError], ...] = (),
) -> None:
    """Re-raise the first failure in project order, skipping `tolerate`d kinds."""

    for o in outcomes:
        if o.ok or o.error is None:
            continue
        if tolerate and isinstance(o.error, tolerate):
            continue
        raise o.error
