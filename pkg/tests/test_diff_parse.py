from __future__ import annotations

import unittest


class TestDiffParse(unittest.TestCase):
    def test_added_file_lines_are_numbered_on_new_side(self) -> None:
        from repoecg.commits.diff_parse import parse_diff_patch

        patch = (
            "diff --git a/hello.py b/hello.py\n"
            "new file mode 100644\n"
            "index 0000000..1111111\n"
            "--- /dev/null\n"
            "+++ b/hello.py\n"
            "@@ -0,0 +1,2 @@\n"
            "+def hello():\n"
            "+    return 1\n"
        )

        files, warnings = parse_diff_patch(patch)

        self.assertEqual(warnings, [])
        self.assertEqual([f.path for f in files], ["hello.py"])
        f = files[0]
        self.assertEqual([(x.kind, x.new_line, x.text) for x in f.lines], [
            ("add", 1, "def hello():"),
            ("add", 2, "    return 1"),
        ])
        self.assertEqual((f.added, f.deleted), (2, 0))

    def test_deleted_lines_are_anchored_where_they_were_removed(self) -> None:
        from repoecg.commits.diff_parse import parse_diff_patch

        patch = (
            "diff --git a/foo.py b/foo.py\n"
            "index 1111111..2222222 100644\n"
            "--- a/foo.py\n"
            "+++ b/foo.py\n"
            "@@ -1,3 +1,3 @@\n"
            " keep\n"
            "-old\n"
            "+new\n"
            " tail\n"
        )

        files, _ = parse_diff_patch(patch)

        self.assertEqual(
            [(x.kind, x.new_line) for x in files[0].lines],
            [("ctx", 1), ("del", 2), ("add", 2), ("ctx", 3)],
        )

    def test_skips_bad_hunk_and_continues(self) -> None:
        from repoecg.commits.diff_parse import parse_diff_patch

        patch = (
            "diff --git a/bad.py b/bad.py\n"
            "--- a/bad.py\n"
            "+++ b/bad.py\n"
            "@@ -x +1 @@\n"
            "+hello\n"
            "diff --git a/good.py b/good.py\n"
            "--- /dev/null\n"
            "+++ b/good.py\n"
            "@@ -0,0 +1 @@\n"
            "+good\n"
        )

        files, warnings = parse_diff_patch(patch)

        self.assertEqual([f.path for f in files], ["good.py"])
        self.assertEqual(warnings, ["diff_parse_skipped kind=parse_failed path=bad.py"])

    def test_deleted_and_binary_files_are_skipped_with_warnings(self) -> None:
        from repoecg.commits.diff_parse import parse_diff_patch

        patch = (
            "diff --git a/gone.py b/gone.py\n"
            "deleted file mode 100644\n"
            "--- a/gone.py\n"
            "+++ /dev/null\n"
            "@@ -1 +0,0 @@\n"
            "-x = 1\n"
            "diff --git a/logo.png b/logo.png\n"
            "Binary files /dev/null and b/logo.png differ\n"
        )

        files, warnings = parse_diff_patch(patch)

        self.assertEqual(files, [])
        self.assertEqual(
            warnings,
            [
                "diff_parse_skipped kind=deleted path=gone.py",
                "diff_parse_skipped kind=binary path=logo.png",
            ],
        )

    def test_uses_new_path_for_rename_with_changes(self) -> None:
        from repoecg.commits.diff_parse import parse_diff_patch

        patch = (
            "diff --git a/oldname.py b/newname.py\n"
            "similarity index 80%\n"
            "rename from oldname.py\n"
            "rename to newname.py\n"
            "--- a/oldname.py\n"
            "+++ b/newname.py\n"
            "@@ -1 +1 @@\n"
            "-a = 1\n"
            "+a = 2\n"
        )

        files, warnings = parse_diff_patch(patch)

        self.assertEqual(warnings, [])
        self.assertEqual([f.path for f in files], ["newname.py"])

    def test_no_newline_marker_is_ignored(self) -> None:
        from repoecg.commits.diff_parse import parse_diff_patch

        patch = (
            "--- a/x.py\n"
            "+++ b/x.py\n"
            "@@ -1 +1 @@\n"
            "-a = 1\n"
            "\\ No newline at end of file\n"
            "+a = 2\n"
            "\\ No newline at end of file\n"
        )

        files, _ = parse_diff_patch(patch, default_path="x.py")

        self.assertEqual([(x.kind, x.text) for x in files[0].lines], [("del", "a = 1"), ("add", "a = 2")])


if __name__ == "__main__":
    raise SystemExit(unittest.main())
