"""git subprocess wrapper used for history mining."""

from __future__ import annotations

import os
import shutil
import subprocess
from dataclasses import dataclass

from ..errors import BlockedError, ExecFailureError, NotARepoError


def _git_bin() -> str:
    return os.environ.get("REPOECG_GIT_BIN") or shutil.which("git") or "git"


def _truncate(s: str, max_chars: int = 2000) -> str:
    if len(s) <= max_chars:
        return s
    return s[: max_chars - 20] + "... [truncated]"


class GitCommandError(ExecFailureError):
    """A git command exited nonzero."""


@dataclass(frozen=True)
class GitClient:
    """Minimal `git` client bound to one working copy."""

    repo_path: str
    bin_path: str = "git"
    timeout_s: int = 600

    @classmethod
    def for_repo(cls, repo_path: str) -> GitClient:
        return cls(repo_path=repo_path, bin_path=_git_bin())

    def _run(self, args: list[str]) -> str:
        try:
            p = subprocess.run(  # noqa: S603
                [self.bin_path, "-C", self.repo_path, *args],
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                check=False,
                timeout=self.timeout_s,
            )
        except FileNotFoundError as exc:
            raise BlockedError(
                "`git` is required. Install git and ensure it is on PATH."
            ) from exc
        except subprocess.TimeoutExpired as exc:
            raise ExecFailureError(f"`git` timed out after {self.timeout_s}s") from exc

        if p.returncode != 0:
            stderr = p.stderr.decode("utf-8", errors="replace").strip()
            raise GitCommandError(
                _truncate(stderr or f"`git {args[0]}` failed (exit={p.returncode})")
            )
        return p.stdout.decode("utf-8", errors="replace")

    def ensure_repo(self) -> None:
        if not os.path.isdir(self.repo_path):
            raise NotARepoError(f"not a git repository: {self.repo_path}")
        try:
            _ = self._run(["rev-parse", "--git-dir"])
        except GitCommandError as exc:
            raise NotARepoError(f"not a git repository: {self.repo_path}") from exc

    def resolve(self, rev: str) -> str | None:
        """Return the commit sha for `rev`, or None if it does not resolve."""

        try:
            out = self._run(["rev-parse", "--verify", "--quiet", f"{rev}^{{commit}}"])
        except GitCommandError:
            return None
        sha = out.strip()
        return sha or None

    def log(self, rev: str, fmt: str) -> str:
        return self._run(
            ["log", "--reverse", "--no-color", "--numstat", f"--format={fmt}", rev]
        )

    def show_patch(self, sha: str) -> str:
        """Patch of a non-merge commit with whole enclosing functions as context."""

        return self._run(
            [
                "show",
                "--format=",
                "--no-color",
                "--no-ext-diff",
                "--no-renames",
                "--function-context",
                sha,
            ]
        )
