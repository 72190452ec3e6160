"""Issue / pull request / comment / profile mining."""

from .client import ApiClient
from .dump import LoadedDump, load_dump, load_project_dump
from .fetch import fetch_repo
from .records import CommentRecord, DumpManifest, IssueRecord, PullRecord, UserProfile

__all__ = [
    "ApiClient",
    "CommentRecord",
    "DumpManifest",
    "IssueRecord",
    "LoadedDump",
    "PullRecord",
    "UserProfile",
    "fetch_repo",
    "load_dump",
    "load_project_dump",
]
