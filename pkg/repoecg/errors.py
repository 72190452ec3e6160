"""Application errors and exit codes."""

from __future__ import annotations

from enum import IntEnum


class ExitCode(IntEnum):
    """Process exit codes (fixed contract).

    - 0: Success
    - 1: Blocked (user action required: config, token)
    - 2: Execution failure (invalid input / runtime failure)
    - 3..11: one code per domain error class, see the classes below
    """

    SUCCESS = 0
    BLOCKED = 1
    EXEC_FAILURE = 2
    AUTH_FAILURE = 3
    RATE_LIMITED = 4
    NOT_FOUND = 5
    PARTIAL_FETCH = 6
    MISSING_INPUT = 7
    SCHEMA_MISMATCH = 8
    INSUFFICIENT_DATA = 9
    SINGLE_CLASS = 10
    DATA_CONFLICT = 11


class RepoEcgError(Exception):
    """Base application error."""

    exit_code: ExitCode = ExitCode.EXEC_FAILURE


class BlockedError(RepoEcgError):
    """Action is blocked until a prerequisite is satisfied."""

    exit_code = ExitCode.BLOCKED


class ExecFailureError(RepoEcgError):
    """Execution failed due to invalid input or runtime failure."""


class AuthFailureError(BlockedError):
    """The API rejected the token (missing, bad or expired)."""

    exit_code = ExitCode.AUTH_FAILURE


class RateLimitedError(ExecFailureError):
    """Rate limit persisted after the advertised reset and all retries."""

    exit_code = ExitCode.RATE_LIMITED


class NotFoundError(ExecFailureError):
    """Repository missing or private."""

    exit_code = ExitCode.NOT_FOUND


class NotARepoError(NotFoundError):
    """Path is not a git repository."""


class PartialFetchError(ExecFailureError):
    """Dump directory exists but its manifest was never written."""

    exit_code = ExitCode.PARTIAL_FETCH


class MissingInputError(ExecFailureError):
    """An upstream artifact (dump, monthly metrics) is missing."""

    exit_code = ExitCode.MISSING_INPUT


class SchemaMismatchError(ExecFailureError):
    exit_code = ExitCode.SCHEMA_MISMATCH


class InsufficientDataError(ExecFailureError):
    """Too little data for the requested computation."""

    exit_code = ExitCode.INSUFFICIENT_DATA


class SingleClassCorpusError(InsufficientDataError):
    """Fighting words needs utterances from both classes."""

    exit_code = ExitCode.SINGLE_CLASS


class DuplicateRecordError(ExecFailureError):
    """The same record id appeared twice with conflicting fields."""

    exit_code = ExitCode.DATA_CONFLICT
