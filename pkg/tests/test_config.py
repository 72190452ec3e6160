from __future__ import annotations

import os
import tempfile
import unittest


def _write_toml(td: str, text: str) -> str:
    path = os.path.join(td, "repoecg.toml")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


class TestLoadConfig(unittest.TestCase):
    def test_missing_default_file_means_defaults(self) -> None:
        from repoecg.config import Config, load_config

        with tempfile.TemporaryDirectory() as td:
            old = os.getcwd()
            os.chdir(td)
            try:
                cfg = load_config()
            finally:
                os.chdir(old)
        self.assertEqual(cfg, Config())
        self.assertEqual(cfg.paths.out_dir, "out")
        self.assertEqual(cfg.wordscore.min_count, 5)
        self.assertEqual(cfg.thresholds.unit_size, 15)

    def test_missing_explicit_file_is_blocked(self) -> None:
        from repoecg.config import load_config
        from repoecg.errors import BlockedError, ExitCode

        with tempfile.TemporaryDirectory() as td:
            with self.assertRaises(BlockedError) as ctx:
                load_config(os.path.join(td, "nope.toml"))
        self.assertEqual(ctx.exception.exit_code, ExitCode.BLOCKED)

    def test_full_file(self) -> None:
        from repoecg.config import load_config

        with tempfile.TemporaryDirectory() as td:
            path = _write_toml(
                td,
                """
[paths]
data_dir = "d"
out_dir = "o"

[api]
base_url = "http://127.0.0.1:9"
per_page = 50

[[projects]]
slug = "acme/widget"
clone = "/src/widget"
branch = "main"

[[projects]]
slug = "acme/gadget"

[scorer]
kind = "external"
command = ["my-scorer", "--batch"]

[thresholds]
unit_size = 20

[style]
lane_height = 80
month_width = 30.5

[wordscore]
alpha = 1
min_count = 1
""",
            )
            cfg = load_config(path)

        self.assertEqual(cfg.source, path)
        self.assertEqual((cfg.paths.data_dir, cfg.paths.out_dir), ("d", "o"))
        self.assertEqual(cfg.api.per_page, 50)
        self.assertEqual(cfg.project_slugs, ("acme/widget", "acme/gadget"))
        self.assertEqual(cfg.project("acme/widget").clone, "/src/widget")
        self.assertIsNone(cfg.project("acme/gadget").clone)
        self.assertIsNone(cfg.project("acme/other").branch)
        self.assertEqual(cfg.scorer.command, ("my-scorer", "--batch"))
        self.assertEqual(cfg.thresholds.unit_size, 20)
        self.assertEqual(cfg.thresholds.unit_complexity, 5)
        self.assertEqual(cfg.style.lane_height, 80.0)
        self.assertIsInstance(cfg.style.lane_height, float)
        self.assertEqual(cfg.wordscore.alpha, 1.0)
        self.assertIsInstance(cfg.wordscore.alpha, float)

    def test_example_file_is_valid(self) -> None:
        from repoecg.config import load_config

        root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        cfg = load_config(os.path.join(root, "repoecg.example.toml"))

        self.assertEqual(cfg.project_slugs, ("owner/name", "owner/other"))
        self.assertEqual(cfg.scorer.kind, "bundled")

    def test_invalid_toml_is_blocked(self) -> None:
        from repoecg.config import load_config
        from repoecg.errors import BlockedError

        with tempfile.TemporaryDirectory() as td:
            path = _write_toml(td, "[paths\n")
            with self.assertRaises(BlockedError):
                load_config(path)


class TestParseConfig(unittest.TestCase):
    def test_rejects_unknown_section_and_key(self) -> None:
        from repoecg.config import parse_config
        from repoecg.errors import BlockedError

        with self.assertRaisesRegex(BlockedError, r"\[metrics\]"):
            parse_config({"metrics": {}})
        with self.assertRaisesRegex(BlockedError, r"\[api\] token"):
            parse_config({"api": {"token": "x"}})

    def test_rejects_wrong_types(self) -> None:
        from repoecg.config import parse_config
        from repoecg.errors import BlockedError

        bad = (
            {"api": {"per_page": "100"}},
            {"api": {"concurrency": True}},
            {"scorer": {"command": "my-scorer"}},
            {"paths": "out"},
        )
        for raw in bad:
            with self.subTest(raw=raw):
                with self.assertRaises(BlockedError):
                    parse_config(raw)

    def test_project_validation(self) -> None:
        from repoecg.config import parse_config
        from repoecg.errors import BlockedError

        bad = (
            {"projects": [{"clone": "/x"}]},
            {"projects": [{"slug": "not-a-slug"}]},
            {"projects": [{"slug": "a/b"}, {"slug": "a/b"}]},
            {"projects": {"slug": "a/b"}},
        )
        for raw in bad:
            with self.subTest(raw=raw):
                with self.assertRaises(BlockedError):
                    parse_config(raw)

    def test_cross_field_checks(self) -> None:
        from repoecg.config import parse_config
        from repoecg.errors import BlockedError

        bad = (
            {"scorer": {"kind": "external"}},
            {"scorer": {"kind": "magic"}},
            {"enrich": {"gender_ratio": "other"}},
            {"api": {"per_page": 0}},
            {"style": {"lane_height": -1}},
        )
        for raw in bad:
            with self.subTest(raw=raw):
                with self.assertRaises(BlockedError):
                    parse_config(raw)


if __name__ == "__main__":
    raise SystemExit(unittest.main())
