"""Command-line entrypoint for repoecg."""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import NoReturn, cast

from . import __version__
from .artifacts import (
    atomic_write_bytes,
    atomic_write_text,
    now_utc_z,
    project_out_dir,
    write_run_json,
)
from .commits.mine import commits_path, load_commits, mine_commits, write_commits
from .config import Config, PathsConfig, load_config
from .enrich.monthly import EnrichContext, enrich_monthly
from .enrich.scorers import (
    ExternalScorer,
    LexiconScorer,
    TextScorer,
    load_scores,
    score_comments,
    scores_path,
    write_scores,
)
from .enrich.tables import load_country_table, load_gender_table, load_generic_domains
from .errors import (
    BlockedError,
    ExecFailureError,
    ExitCode,
    RepoEcgError,
    SingleClassCorpusError,
)
from .githost.client import TOKEN_ENV, ApiClient
from .githost.dump import load_project_dump
from .githost.fetch import fetch_repo, validate_slug
from .metrics.aggregate import aggregate_monthly
from .metrics.monthly_csv import monthly_path, read_monthly_csv, write_monthly_csv
from .metrics.summary import summarize_project, write_summary
from .projects import ProjectOutcome, raise_first_failure, run_for_projects
from .stats.compare import component_means, compare_projects
from .stats.report import anonymized_names, format_comparison_table, write_comparison_csv
from .stg.build import SNAPSHOT_WINDOWS, build_stg, history_window, trailing_window
from .stg.render import render_svg
from .wordscore.fighting import fighting_words, labeled_utterances
from .wordscore.plot import render_scatter_svg, write_fighting_words_csv

logger = logging.getLogger("repoecg")

JsonMap = dict[str, object]

PROG = "repoecg"
LOG_FORMAT = f"[{PROG}] %(levelname)s: %(message)s"

WINDOW_CHOICES = ("12", "36", "60", "120", "all", "all-snapshots")
PR_SIDE_KINDS = frozenset({"pull", "review"})


@dataclass(frozen=True)
class ParserExit(Exception):
    code: int
    message: str = ""


class ThrowingArgumentParser(argparse.ArgumentParser):
    def exit(self, status: int = 0, message: str | None = None) -> NoReturn:  # type: ignore[override]
        if message:
            self._print_message(message, sys.stderr if status else sys.stdout)
        raise ParserExit(status, message or "")

    def error(self, message: str) -> NoReturn:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self._print_message(f"{self.prog}: error: {message}\n", sys.stderr)
        raise ParserExit(2, f"{self.prog}: error: {message}\n")


def parse_slug(value: str) -> str:
    try:
        return validate_slug(value)
    except ExecFailureError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def _target_slugs(args: argparse.Namespace, cfg: Config) -> tuple[str, ...]:
    if bool(getattr(args, "all", False)):
        if not cfg.projects:
            raise BlockedError("--all needs at least one [[projects]] entry in the config")
        return cfg.project_slugs
    slugs = tuple(getattr(args, "slugs", None) or ())
    slug = getattr(args, "slug", None)
    if slug:
        slugs = (slug,)
    if not slugs:
        raise ExecFailureError("give a repository <owner/name> or --all")
    return slugs


def _display_names(
    args: argparse.Namespace, cfg: Config, slugs: Sequence[str]
) -> dict[str, str]:
    if not bool(getattr(args, "anonymize", False)):
        return {s: s for s in slugs}
    ordered = list(cfg.project_slugs)
    ordered.extend(s for s in slugs if s not in ordered)
    return anonymized_names(ordered)


def _run(
    args: argparse.Namespace,
    cfg: Config,
    fn: Callable[[str], JsonMap],
    *,
    tolerate: tuple[type[RepoEcgError], ...] = (),
) -> tuple[list[ProjectOutcome], JsonMap]:
    slugs = _target_slugs(args, cfg)
    outcomes = run_for_projects(slugs, fn, max_workers=cfg.api.concurrency)
    raise_first_failure(outcomes, tolerate=tolerate)
    return outcomes, {"projects": [o.to_json() for o in outcomes]}


def _config(args: argparse.Namespace) -> Config:
    return cast(Config, args._config)


def handle_mine(args: argparse.Namespace) -> JsonMap:
    cfg = _config(args)
    token = os.environ.get(TOKEN_ENV, "").strip() or None
    if token is None:
        logger.warning("%s is not set; requests are unauthenticated", TOKEN_ENV)

    def mine_one(slug: str) -> JsonMap:
        client = ApiClient(
            base_url=cfg.api.base_url,
            token=token,
            per_page=cfg.api.per_page,
            concurrency=cfg.api.concurrency,
            max_retries=cfg.api.max_retries,
            timeout_s=float(cfg.api.timeout_s),
        )
        fetch_warnings: list[str] = []
        manifest = fetch_repo(
            client, slug=slug, data_dir=cfg.paths.data_dir, warnings=fetch_warnings
        )
        result: JsonMap = {
            "record_counts": dict(manifest.record_counts),
            "warnings": fetch_warnings,
        }
        project = cfg.project(slug)
        if project.clone:
            records, warnings = mine_commits(
                project.clone, project.branch, thresholds=cfg.thresholds
            )
            path = commits_path(cfg.paths.data_dir, slug)
            result["commits"] = write_commits(path, records)
            result["warnings"] = [*fetch_warnings, *warnings]
        else:
            logger.info("%s: no clone configured, commit mining skipped", slug)
        return result

    _, result = _run(args, cfg, mine_one)
    return result


def _make_scorer(cfg: Config) -> TextScorer:
    if cfg.scorer.kind == "external":
        return ExternalScorer(command=cfg.scorer.command)
    return LexiconScorer()


def _enrich_context(cfg: Config) -> EnrichContext:
    return EnrichContext(
        gender_table=load_gender_table(cfg.enrich.gender_table or None),
        country_table=load_country_table(cfg.enrich.country_table or None),
        generic_domains=load_generic_domains(cfg.enrich.generic_domains or None),
        gender_numerator=cfg.enrich.gender_ratio,
    )


def handle_metrics(args: argparse.Namespace) -> JsonMap:
    cfg = _config(args)
    scorer = _make_scorer(cfg)
    ctx = _enrich_context(cfg)
    data_dir = cfg.paths.data_dir

    def metrics_one(slug: str) -> JsonMap:
        dump = load_project_dump(data_dir, slug)
        commits, commit_warnings = load_commits(commits_path(data_dir, slug))
        warnings = [*dump.warnings, *commit_warnings]
        rows = aggregate_monthly(
            slug=slug,
            issues=dump.issues,
            pulls=dump.pulls,
            comments=dump.comments,
            commits=commits,
            warnings=warnings,
        )
        scoring = score_comments(dump.comments, scorer, workers=cfg.scorer.workers)
        warnings.extend(scoring.warnings)
        write_scores(scores_path(data_dir, slug), dump.comments, scoring.scores)
        rows = enrich_monthly(
            rows, dump, commits, scores=scoring.scores, failed=scoring.failed, ctx=ctx
        )
        path = monthly_path(data_dir, slug)
        write_monthly_csv(path, rows)
        summary_path = write_summary(
            cfg.paths.out_dir, summarize_project(dump, commits, rows)
        )
        logger.info("%s: %d months -> %s", slug, len(rows), path)
        return {
            "monthly_csv": path,
            "summary": summary_path,
            "months": len(rows),
            "warnings": warnings,
        }

    _, result = _run(args, cfg, metrics_one)
    return result


def _windows(choice: str) -> tuple[str, ...]:
    if choice == "all-snapshots":
        return (*(str(n) for n in SNAPSHOT_WINDOWS), "all")
    return (choice,)


def handle_stg(args: argparse.Namespace) -> JsonMap:
    cfg = _config(args)
    windows = _windows(str(args.window))

    def stg_one(slug: str) -> JsonMap:
        rows = read_monthly_csv(monthly_path(cfg.paths.data_dir, slug), slug)
        warnings: list[str] = []
        written: list[str] = []
        for w in windows:
            window = (
                history_window(rows)
                if w == "all"
                else trailing_window(rows, int(w), warnings)
            )
            doc = build_stg(rows, window)
            path = os.path.join(project_out_dir(cfg.paths.out_dir, slug), f"stg_{w}.svg")
            atomic_write_bytes(path, render_svg(doc, cfg.style))
            written.append(path)
        return {"svg": written, "warnings": warnings}

    _, result = _run(args, cfg, stg_one)
    return result


def handle_compare(args: argparse.Namespace) -> JsonMap:
    cfg = _config(args)
    slugs = (
        _target_slugs(args, cfg)
        if bool(args.all) or args.slugs
        else cfg.project_slugs
    )
    vectors = [
        component_means(s, read_monthly_csv(monthly_path(cfg.paths.data_dir, s), s))
        for s in slugs
    ]
    comparisons = compare_projects(vectors)
    names = _display_names(args, cfg, slugs) if bool(args.anonymize) else None

    csv_path = os.path.join(cfg.paths.out_dir, "comparison.csv")
    write_comparison_csv(csv_path, comparisons, names)
    table = format_comparison_table(slugs, comparisons, names)
    table_path = os.path.join(cfg.paths.out_dir, "comparison.txt")
    atomic_write_text(table_path, table)
    print(table, end="" if table.endswith("\n") else "\n")
    return {
        "comparison_csv": csv_path,
        "comparison_table": table_path,
        "projects": len(slugs),
        "pairs": len(comparisons),
    }


def handle_words(args: argparse.Namespace) -> JsonMap:
    cfg = _config(args)
    ws = cfg.wordscore
    all_mode = bool(args.all)

    def words_one(slug: str) -> JsonMap:
        dump = load_project_dump(cfg.paths.data_dir, slug)
        scores = load_scores(scores_path(cfg.paths.data_dir, slug))
        pr_comments = [c for c in dump.comments if c.parent_kind in PR_SIDE_KINDS]
        utterances, dropped = labeled_utterances(
            pr_comments, {key: s.useful for key, s in scores.items()}
        )
        ranked = fighting_words(
            [u for u in utterances if u.label == "useful"],
            [u for u in utterances if u.label == "not_useful"],
            alpha=ws.alpha,
            ngram_max=ws.ngram_max,
            min_count=ws.min_count,
            top_n=ws.top_n,
        )
        out = project_out_dir(cfg.paths.out_dir, slug)
        csv_path = os.path.join(out, "fighting_words.csv")
        svg_path = os.path.join(out, "fighting_words.svg")
        write_fighting_words_csv(csv_path, ranked)
        title = f"{_display_names(args, cfg, [slug])[slug]}: useful vs not useful"
        atomic_write_bytes(svg_path, render_scatter_svg(ranked, title))
        return {
            "csv": csv_path,
            "svg": svg_path,
            "tokens": len(ranked),
            "utterances": len(utterances),
            "dropped": dropped,
        }

    outcomes, result = _run(
        args,
        cfg,
        words_one,
        tolerate=(SingleClassCorpusError,) if all_mode else (),
    )
    for o in outcomes:
        if not o.ok:
            print(f"skipped {o.slug}: {o.error_message}")
    return result


def _add_common(p: argparse.ArgumentParser) -> None:
    _ = p.add_argument(
        "--config", default=None, metavar="PATH", help="repoecg.toml (default: ./repoecg.toml)"
    )
    _ = p.add_argument("-v", "--verbose", action="store_true", help="Debug logging")


def _add_target(p: argparse.ArgumentParser) -> None:
    target = p.add_mutually_exclusive_group()
    _ = target.add_argument("slug", nargs="?", type=parse_slug, help="<owner/name>")
    _ = target.add_argument(
        "--all", action="store_true", help="Every project listed in the config"
    )


def build_parser() -> ThrowingArgumentParser:
    parser = ThrowingArgumentParser(prog=PROG, allow_abbrev=False)
    _ = parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    examples = """
Examples:
  repoecg mine owner/name
  repoecg metrics --all
  repoecg stg owner/name --window all-snapshots
  repoecg compare --all --anonymize
  repoecg words owner/name
""".strip("\n")

    mine = sub.add_parser(
        "mine",
        allow_abbrev=False,
        help="Fetch issues, PRs, comments and profiles; mine commits of a local clone",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=examples,
    )
    _add_target(mine)
    _add_common(mine)
    mine.set_defaults(_handler=handle_mine)

    metrics = sub.add_parser(
        "metrics", allow_abbrev=False, help="Aggregate and enrich monthly metrics"
    )
    _add_target(metrics)
    _add_common(metrics)
    metrics.set_defaults(_handler=handle_metrics)

    stg = sub.add_parser("stg", allow_abbrev=False, help="Draw the sustainability graph")
    _add_target(stg)
    _ = stg.add_argument(
        "--window",
        default="all",
        choices=WINDOW_CHOICES,
        help="Trailing months, the full history, or every snapshot window",
    )
    _add_common(stg)
    stg.set_defaults(_handler=handle_stg)

    compare = sub.add_parser(
        "compare", allow_abbrev=False, help="Pairwise cross-project comparison"
    )
    _ = compare.add_argument(
        "slugs", nargs="*", type=parse_slug, metavar="owner/name", help="Default: all projects"
    )
    _ = compare.add_argument("--all", action="store_true", help="Every configured project")
    _ = compare.add_argument(
        "--anonymize", action="store_true", help="Label projects P1..Pn in config order"
    )
    _add_common(compare)
    compare.set_defaults(_handler=handle_compare)

    words = sub.add_parser(
        "words", allow_abbrev=False, help="Fighting words over useful / not useful PR comments"
    )
    _add_target(words)
    _ = words.add_argument(
        "--anonymize", action="store_true", help="Label projects P1..Pn in plot titles"
    )
    _add_common(words)
    words.set_defaults(_handler=handle_words)

    return parser


def main(argv: Iterable[str] | None = None) -> int:
    argv_list = list(argv) if argv is not None else sys.argv[1:]
    started_at = now_utc_z()
    t0 = time.monotonic()

    exit_code: int = int(ExitCode.EXEC_FAILURE)
    status = "unknown"
    result: JsonMap = {}
    error: JsonMap | None = None
    out_dir = PathsConfig().out_dir

    try:
        parser = build_parser()
        args = parser.parse_args(argv_list)
        configure_logging(bool(getattr(args, "verbose", False)))
        cfg = load_config(getattr(args, "config", None))
        out_dir = cfg.paths.out_dir
        args._config = cfg
        handler = getattr(args, "_handler", None)
        if not callable(handler):
            raise BlockedError("No handler configured for this command")
        typed_handler = cast(Callable[[argparse.Namespace], JsonMap], handler)
        result = typed_handler(args)
        status = "ok"
        exit_code = int(ExitCode.SUCCESS)
    except ParserExit as exc:
        # argparse already printed usage/help.
        status = "help" if exc.code == 0 else "invalid_args"
        exit_code = int(ExitCode.SUCCESS if exc.code == 0 else ExitCode.EXEC_FAILURE)
        if exc.message:
            error = {"message": exc.message.strip("\n")}
    except SingleClassCorpusError as exc:
        status = "single_class"
        exit_code = int(exc.exit_code)
        error = {"type": type(exc).__name__, "message": str(exc)}
        print(f"[{PROG}] WARNING: {exc}", file=sys.stderr)
    except BlockedError as exc:
        status = "blocked"
        exit_code = int(exc.exit_code)
        error = {"type": type(exc).__name__, "message": str(exc)}
        print(f"[{PROG}] BLOCKED: {exc}", file=sys.stderr)
    except RepoEcgError as exc:
        status = exc.exit_code.name.lower()
        exit_code = int(exc.exit_code)
        error = {"type": type(exc).__name__, "message": str(exc)}
        print(f"[{PROG}] ERROR: {exc}", file=sys.stderr)
    except Exception as exc:  # noqa: BLE001
        status = "exec_failure"
        exit_code = int(ExitCode.EXEC_FAILURE)
        error = {"type": type(exc).__name__, "message": str(exc)}
        print(f"[{PROG}] ERROR: {type(exc).__name__}: {exc}", file=sys.stderr)
    finally:
        ended_at = now_utc_z()
        duration_ms = int((time.monotonic() - t0) * 1000)

        payload: JsonMap = {
            "schema_version": 1,
            "started_at": started_at,
            "ended_at": ended_at,
            "duration_ms": duration_ms,
            "argv": argv_list,
            "cwd": os.getcwd(),
            "status": status,
            "exit_code": exit_code,
            "result": result,
        }
        if error is not None:
            payload["error"] = error

        try:
            write_run_json(out_dir, payload)
        except Exception as exc:  # noqa: BLE001
            print(f"[{PROG}] ERROR: failed to write run.json: {exc}", file=sys.stderr)
            return int(ExitCode.EXEC_FAILURE)

    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
