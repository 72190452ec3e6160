from __future__ import annotations

import json
import os
import tempfile
import unittest
from datetime import datetime, timezone

from tests._fixture_api import FixtureApi, widget_routes


def _epoch(text: str) -> int:
    return int(datetime.fromisoformat(text).replace(tzinfo=timezone.utc).timestamp())


def _read_all(directory: str) -> dict[str, bytes]:
    out: dict[str, bytes] = {}
    for name in sorted(os.listdir(directory)):
        with open(os.path.join(directory, name), "rb") as fh:
            out[name] = fh.read()
    return out


class TestParseUtc(unittest.TestCase):
    def test_offsets_are_normalized_to_utc(self) -> None:
        from repoecg.githost.records import parse_utc

        self.assertEqual(parse_utc("2021-01-05T10:00:00Z"), _epoch("2021-01-05T10:00:00"))
        self.assertEqual(
            parse_utc("2021-01-05T12:00:00+02:00"), _epoch("2021-01-05T10:00:00")
        )
        self.assertIsNone(parse_utc(None))
        self.assertIsNone(parse_utc(""))

    def test_rejects_garbage(self) -> None:
        from repoecg.githost.records import RecordFormatError, parse_utc

        with self.assertRaises(RecordFormatError):
            parse_utc("yesterday")


class TestRecords(unittest.TestCase):
    def test_closed_before_created_is_rejected(self) -> None:
        from repoecg.githost.records import IssueRecord, RecordFormatError

        with self.assertRaises(RecordFormatError):
            IssueRecord(
                repo_slug="o/n",
                number=1,
                title="t",
                body="",
                author_login="a",
                author_association="NONE",
                created_at=100,
                closed_at=99,
            )

    def test_merged_pull_needs_closed_at(self) -> None:
        from repoecg.githost.records import PullRecord, RecordFormatError

        with self.assertRaises(RecordFormatError):
            PullRecord(
                repo_slug="o/n",
                number=2,
                title="t",
                body="",
                author_login="a",
                author_association="NONE",
                created_at=100,
                merged_at=150,
            )

    def test_unknown_association_normalizes_to_none(self) -> None:
        from repoecg.githost.records import normalize_association

        self.assertEqual(normalize_association("member"), "MEMBER")
        self.assertEqual(normalize_association("MANNEQUIN"), "NONE")
        self.assertEqual(normalize_association(None), "NONE")

    def test_reaction_summary_drops_totals_and_zeros(self) -> None:
        from repoecg.githost.records import reaction_counts_from_api

        got = reaction_counts_from_api(
            {"url": "x", "total_count": 3, "+1": 2, "heart": 1, "eyes": 0}
        )
        self.assertEqual(got, {"+1": 2, "heart": 1})


class TestValidateSlug(unittest.TestCase):
    def test_accepts_owner_name(self) -> None:
        from repoecg.githost.fetch import validate_slug

        self.assertEqual(validate_slug(" acme/widget "), "acme/widget")

    def test_rejects_malformed(self) -> None:
        from repoecg.errors import ExecFailureError
        from repoecg.githost.fetch import validate_slug

        for bad in ("", "acme", "a/b/c", "/widget", "acme/"):
            with self.subTest(bad=bad):
                with self.assertRaises(ExecFailureError):
                    validate_slug(bad)


class TestFetchRepo(unittest.TestCase):
    def _client(self, api: FixtureApi, **kw: object) -> object:
        from repoecg.githost.client import ApiClient

        return ApiClient(base_url=api.base_url, sleep=lambda _s: None, **kw)  # type: ignore[arg-type]

    def test_fetch_writes_manifest_with_served_counts(self) -> None:
        from repoecg.githost.dump import load_project_dump
        from repoecg.githost.fetch import fetch_repo

        with tempfile.TemporaryDirectory() as td, FixtureApi(widget_routes()) as api:
            manifest = fetch_repo(
                self._client(api), slug="acme/widget", data_dir=td, fetched_at=1  # type: ignore[arg-type]
            )
            self.assertEqual(
                dict(manifest.record_counts),
                {"issue": 2, "pull": 2, "comment": 5, "profile": 3},
            )

            raw = os.path.join(td, "acme__widget", "raw")
            with open(os.path.join(raw, "manifest.json"), encoding="utf-8") as fh:
                on_disk = json.load(fh)
            self.assertEqual(on_disk["schema_version"], 1)
            self.assertEqual(on_disk["fetched_at"], 1)

            dump = load_project_dump(td, "acme/widget")
            self.assertEqual([i.number for i in dump.issues], [1, 3])
            self.assertEqual([p.number for p in dump.pulls], [2, 4])
            self.assertEqual(dump.pulls[0].merged_at, _epoch("2021-01-11T00:00:00"))
            self.assertIsNone(dump.pulls[1].merged_at)
            self.assertEqual(dump.issues[0].labels, ("bug",))
            self.assertEqual(dict(dump.issues[0].reaction_counts), {"+1": 2, "heart": 1})
            self.assertEqual(dump.warnings, ())

            kinds = {c.comment_id: (c.parent_kind, c.parent_number) for c in dump.comments}
            self.assertEqual(
                kinds,
                {
                    101: ("issue", 1),
                    102: ("pull", 2),
                    103: ("issue", 3),
                    201: ("review", 2),
                    202: ("review", 4),
                },
            )
            profiles = dump.profiles_by_login()
            self.assertEqual(profiles["bob"].location_raw, "Knoxville, TN")
            self.assertIsNone(profiles["carol"].display_name)

    def test_deleted_account_profile_is_skipped_with_warning(self) -> None:
        from repoecg.githost.dump import load_project_dump
        from repoecg.githost.fetch import fetch_repo

        routes = widget_routes()
        del routes["users/alice"]
        warnings: list[str] = []
        with tempfile.TemporaryDirectory() as td, FixtureApi(routes) as api:
            with self.assertLogs("repoecg.githost.fetch", level="WARNING"):
                manifest = fetch_repo(
                    self._client(api), slug="acme/widget", data_dir=td, warnings=warnings  # type: ignore[arg-type]
                )
            self.assertEqual(manifest.record_counts["profile"], 2)
            self.assertEqual(manifest.record_counts["issue"], 2)
            self.assertEqual(warnings, ["profile_missing login=alice repo=acme/widget"])

            dump = load_project_dump(td, "acme/widget")
            self.assertEqual(sorted(dump.profiles_by_login()), ["bob", "carol"])

    def test_issue_and_review_comment_ids_may_collide(self) -> None:
        from repoecg.githost.dump import load_project_dump
        from repoecg.githost.fetch import fetch_repo

        routes = widget_routes()
        review = routes["repos/acme/widget/pulls/comments"]
        review[1] = {**review[1], "id": 101}
        with tempfile.TemporaryDirectory() as td, FixtureApi(routes) as api:
            manifest = fetch_repo(
                self._client(api), slug="acme/widget", data_dir=td, fetched_at=1  # type: ignore[arg-type]
            )
            self.assertEqual(manifest.record_counts["comment"], 5)

            dump = load_project_dump(td, "acme/widget")
            keys = sorted(c.key for c in dump.comments)
            self.assertEqual(
                keys,
                [("issue", 101), ("issue", 102), ("issue", 103), ("review", 101), ("review", 201)],
            )

    def test_refetch_is_identical(self) -> None:
        from repoecg.githost.fetch import fetch_repo

        with tempfile.TemporaryDirectory() as td, FixtureApi(widget_routes()) as api:
            raw = os.path.join(td, "acme__widget", "raw")
            fetch_repo(self._client(api), slug="acme/widget", data_dir=td, fetched_at=7)  # type: ignore[arg-type]
            first = _read_all(raw)
            fetch_repo(self._client(api), slug="acme/widget", data_dir=td, fetched_at=7)  # type: ignore[arg-type]
            second = _read_all(raw)
            self.assertEqual(first, second)

    def test_pagination_fan_out_and_next_links_agree(self) -> None:
        from repoecg.githost.client import ApiClient

        routes = {"items": [{"id": i} for i in range(7)]}
        for advertise_last in (True, False):
            with self.subTest(advertise_last=advertise_last):
                with FixtureApi(routes, advertise_last=advertise_last) as api:
                    client = ApiClient(base_url=api.base_url, per_page=2, concurrency=3)
                    got = client.paginate("items")
                self.assertEqual([x["id"] for x in got], list(range(7)))
                self.assertEqual(api.requests.count("items"), 4)

    def test_missing_token_against_auth_server_is_auth_failure(self) -> None:
        from repoecg.errors import AuthFailureError, ExitCode
        from repoecg.githost.fetch import fetch_repo

        with tempfile.TemporaryDirectory() as td, FixtureApi(widget_routes(), token="s3cret") as api:
            with self.assertRaises(AuthFailureError) as ctx:
                fetch_repo(self._client(api), slug="acme/widget", data_dir=td)  # type: ignore[arg-type]
            self.assertEqual(ctx.exception.exit_code, ExitCode.AUTH_FAILURE)

            manifest = fetch_repo(
                self._client(api, token="s3cret"), slug="acme/widget", data_dir=td  # type: ignore[arg-type]
            )
            self.assertEqual(manifest.record_counts["issue"], 2)

    def test_unknown_repo_is_not_found(self) -> None:
        from repoecg.errors import NotFoundError
        from repoecg.githost.fetch import fetch_repo

        with tempfile.TemporaryDirectory() as td, FixtureApi(widget_routes()) as api:
            with self.assertRaises(NotFoundError):
                fetch_repo(self._client(api), slug="acme/missing", data_dir=td)  # type: ignore[arg-type]

    def test_rate_limit_sleeps_until_reset_then_gives_up(self) -> None:
        from unittest import mock

        from repoecg.errors import RateLimitedError
        from repoecg.githost.client import ApiClient

        limited = mock.Mock()
        limited.status_code = 403
        limited.headers = {"X-RateLimit-Remaining": "0", "X-RateLimit-Reset": "110"}
        session = mock.Mock()
        session.headers = {}
        session.get.return_value = limited
        slept: list[float] = []

        client = ApiClient(
            base_url="http://example.invalid",
            max_retries=2,
            sleep=slept.append,
            clock=lambda: 100.0,
            session=session,
        )
        with self.assertRaises(RateLimitedError):
            client.get_json("repos/a/b")
        self.assertEqual(slept, [11.0, 11.0])
        self.assertEqual(session.get.call_count, 3)


class TestLoadDump(unittest.TestCase):
    def test_missing_dump_is_missing_input(self) -> None:
        from repoecg.errors import MissingInputError
        from repoecg.githost.dump import load_project_dump

        with tempfile.TemporaryDirectory() as td:
            with self.assertRaises(MissingInputError):
                load_project_dump(td, "acme/widget")

    def test_dump_without_manifest_is_partial(self) -> None:
        from repoecg.errors import PartialFetchError
        from repoecg.githost.dump import load_project_dump

        with tempfile.TemporaryDirectory() as td:
            raw = os.path.join(td, "acme__widget", "raw")
            os.makedirs(raw)
            with open(os.path.join(raw, "issues.ndjson"), "w", encoding="utf-8") as fh:
                fh.write("{}\n")
            with self.assertRaises(PartialFetchError):
                load_project_dump(td, "acme/widget")

    def test_unknown_schema_version_is_schema_mismatch(self) -> None:
        from repoecg.errors import SchemaMismatchError
        from repoecg.githost.dump import load_project_dump

        with tempfile.TemporaryDirectory() as td:
            raw = os.path.join(td, "acme__widget", "raw")
            os.makedirs(raw)
            with open(os.path.join(raw, "manifest.json"), "w", encoding="utf-8") as fh:
                json.dump(
                    {
                        "repo_slug": "acme/widget",
                        "fetched_at": 0,
                        "record_counts": {},
                        "api_base_url": "x",
                        "schema_version": 99,
                    },
                    fh,
                )
            with self.assertRaises(SchemaMismatchError):
                load_project_dump(td, "acme/widget")

    def test_malformed_lines_become_warnings(self) -> None:
        from repoecg.githost.dump import load_project_dump

        with tempfile.TemporaryDirectory() as td:
            raw = os.path.join(td, "acme__widget", "raw")
            os.makedirs(raw)
            with open(os.path.join(raw, "manifest.json"), "w", encoding="utf-8") as fh:
                json.dump(
                    {
                        "repo_slug": "acme/widget",
                        "fetched_at": 0,
                        "record_counts": {"issue": 2},
                        "api_base_url": "x",
                        "schema_version": 1,
                    },
                    fh,
                )
            good = {
                "repo_slug": "acme/widget",
                "number": 5,
                "title": "t",
                "body": "",
                "author_login": "a",
                "author_association": "NONE",
                "created_at": 10,
                "closed_at": None,
                "labels": [],
                "reaction_counts": {},
                "is_pull": False,
            }
            with open(os.path.join(raw, "issues.ndjson"), "w", encoding="utf-8") as fh:
                fh.write("not json\n")
                fh.write(json.dumps(good) + "\n")

            dump = load_project_dump(td, "acme/widget")
            self.assertEqual([i.number for i in dump.issues], [5])
            self.assertEqual(len(dump.warnings), 1)
            self.assertIn("malformed_record file=issues.ndjson line=1", dump.warnings[0])


if __name__ == "__main__":
    raise SystemExit(unittest.main())
