from __future__ import annotations

import os
import tempfile
import unittest

from tests._git_helpers import _git_add, _git_commit, _git_init, _run_git, _write

DAY = 86400
T0 = 1609459200  # 2021-01-01T00:00:00Z

CALC_PY = (
    "def add(a, b):\n"
    "    if a and b:\n"
    "        return a + b\n"
    "    return 0\n"
)


def _new_file_patch(path: str, content: str) -> str:
    lines = content.splitlines()
    body = "".join(f"+{x}\n" for x in lines)
    return (
        f"diff --git a/{path} b/{path}\n"
        "new file mode 100644\n"
        "--- /dev/null\n"
        f"+++ b/{path}\n"
        f"@@ -0,0 +1,{len(lines)} @@\n"
        f"{body}"
    )


class TestExtractUnits(unittest.TestCase):
    def test_python_function(self) -> None:
        from repoecg.commits.units import extract_patch_units

        units, warnings = extract_patch_units(_new_file_patch("calc.py", CALC_PY))

        self.assertEqual(warnings, [])
        self.assertEqual(len(units), 1)
        u = units[0]
        self.assertEqual((u.file_path, u.unit_name), ("calc.py", "add"))
        self.assertEqual(u.size_loc, 4)
        self.assertEqual(u.cyclomatic, 3)
        self.assertEqual(u.param_count, 2)
        self.assertEqual(u.churn, 4)

    def test_python_docstring_words_are_not_branches(self) -> None:
        from repoecg.commits.units import cyclomatic_proxy, extract_patch_units

        src = (
            "def add(a, b):\n"
            '    """Add if both or either is set.\n'
            "\n"
            "for each value and then\n"
            "def fake(x):\n"
            '    """\n'
            "    if a and b:  # or not\n"
            "        return a + b\n"
            "    return 0\n"
        )
        units, _ = extract_patch_units(_new_file_patch("calc.py", src))

        self.assertEqual(
            [(u.unit_name, u.param_count, u.cyclomatic, u.size_loc) for u in units],
            [("add", 2, 3, 8)],
        )
        self.assertEqual(cyclomatic_proxy("python", ["x = '''if", "or", "''' if y else z"]), 2)

    def test_c_function(self) -> None:
        from repoecg.commits.units import extract_patch_units

        src = "int max(int a, int b) {\n  if (a > b) return a;\n  return b;\n}\n"
        units, _ = extract_patch_units(_new_file_patch("max.c", src))

        self.assertEqual([(u.unit_name, u.param_count, u.cyclomatic, u.size_loc) for u in units], [("max", 2, 2, 4)])

    def test_fortran_subroutine(self) -> None:
        from repoecg.commits.units import extract_patch_units

        src = (
            "subroutine step(x, y, n)\n"
            "  if (n > 0) then\n"
            "    x = y\n"
            "  end if\n"
            "end subroutine step\n"
        )
        units, _ = extract_patch_units(_new_file_patch("step.f90", src))

        self.assertEqual([(u.unit_name, u.param_count, u.cyclomatic, u.size_loc) for u in units], [("step", 3, 2, 5)])

    def test_unsupported_language_has_no_units(self) -> None:
        from repoecg.commits.units import extract_patch_units

        units, warnings = extract_patch_units(_new_file_patch("README.md", "# hi\n"))

        self.assertEqual(units, [])
        self.assertEqual(warnings, [])

    def test_unchanged_function_in_context_is_not_a_unit(self) -> None:
        from repoecg.commits.units import extract_units

        patch = (
            "--- a/calc.py\n"
            "+++ b/calc.py\n"
            "@@ -1,4 +1,7 @@\n"
            " def add(a, b):\n"
            "     if a and b:\n"
            "         return a + b\n"
            "     return 0\n"
            "+\n"
            "+def scale(x, y, z):\n"
            "+    return x * y * z\n"
        )
        units = extract_units(patch, "calc.py")

        self.assertEqual([(u.unit_name, u.param_count, u.churn) for u in units], [("scale", 3, 2)])


class TestDmmScores(unittest.TestCase):
    def test_share_of_low_risk_churn(self) -> None:
        from repoecg.commits.dmm import dmm_scores
        from repoecg.commits.units import ChangedUnit

        units = [
            ChangedUnit("a.py", "big", size_loc=20, cyclomatic=2, param_count=1, churn=10),
            ChangedUnit("a.py", "small", size_loc=5, cyclomatic=9, param_count=4, churn=30),
        ]
        s = dmm_scores(units)

        self.assertAlmostEqual(s.size or 0.0, 0.75)
        self.assertAlmostEqual(s.complexity or 0.0, 0.25)
        self.assertAlmostEqual(s.interfacing or 0.0, 0.25)

    def test_no_units_is_absent_not_zero(self) -> None:
        from repoecg.commits.dmm import DmmScores, dmm_scores

        self.assertEqual(dmm_scores([]), DmmScores(None, None, None))

    def test_thresholds_are_inclusive_and_configurable(self) -> None:
        from repoecg.commits.dmm import RiskThresholds, dmm_scores
        from repoecg.commits.units import ChangedUnit

        units = [ChangedUnit("a.py", "f", size_loc=15, cyclomatic=5, param_count=2, churn=3)]
        self.assertEqual(dmm_scores(units).size, 1.0)
        strict = RiskThresholds(unit_size=10, unit_complexity=4, unit_interfacing=1)
        s = dmm_scores(units, strict)
        self.assertEqual((s.size, s.complexity, s.interfacing), (0.0, 0.0, 0.0))


class TestAuthorIdentity(unittest.TestCase):
    def test_noreply_maps_to_login(self) -> None:
        from repoecg.commits.mine import author_identity

        self.assertEqual(author_identity("12345+Bob@users.noreply.github.com"), "bob")
        self.assertEqual(author_identity("bob@users.noreply.github.com"), "bob")
        self.assertEqual(author_identity(" Alice@Example.COM "), "alice@example.com")


class TestMineCommits(unittest.TestCase):
    def _scripted_repo(self, td: str) -> dict[str, str]:
        _git_init(td)
        _write(td, "calc.py", CALC_PY)
        _git_add(td, "calc.py")
        first = _git_commit(td, "add calc", when=T0)

        _run_git(td, "checkout", "-q", "-b", "side")
        _write(td, "README.md", "# calc\n")
        _git_add(td, "README.md")
        docs = _git_commit(
            td,
            "docs",
            when=T0 + DAY,
            author="Bob Jones",
            email="12345+bob@users.noreply.github.com",
        )

        _run_git(td, "checkout", "-q", "-")
        _write(td, "calc.py", CALC_PY + "\ndef scale(x, y, z):\n    return x * y * z\n")
        _git_add(td, "calc.py")
        scale = _git_commit(td, "add scale", when=T0 + 2 * DAY)

        merge = _git_commit(
            td, "merge side", when=T0 + 3 * DAY, extra=("merge", "-q", "--no-ff", "side")
        )
        return {"first": first, "docs": docs, "scale": scale, "merge": merge}

    def test_records_per_commit(self) -> None:
        from repoecg.commits.mine import mine_commits

        with tempfile.TemporaryDirectory() as td:
            shas = self._scripted_repo(td)
            records, warnings = mine_commits(td)

        self.assertEqual(warnings, [])
        self.assertEqual(
            [r.sha for r in records],
            [shas["first"], shas["docs"], shas["scale"], shas["merge"]],
        )
        self.assertEqual([r.authored_at for r in records], [T0 + i * DAY for i in range(4)])
        self.assertEqual([r.parent_count for r in records], [0, 1, 1, 2])

        first, docs, scale, merge = records
        self.assertEqual((first.files_changed, first.lines_added, first.lines_deleted), (1, 4, 0))
        self.assertEqual(
            (first.dmm_unit_size, first.dmm_unit_complexity, first.dmm_unit_interfacing),
            (1.0, 1.0, 1.0),
        )
        self.assertIsNone(docs.dmm_unit_size)
        self.assertEqual(docs.author_key, "bob")
        self.assertEqual(scale.lines_added, 3)
        self.assertEqual(
            (scale.dmm_unit_size, scale.dmm_unit_complexity, scale.dmm_unit_interfacing),
            (1.0, 1.0, 0.0),
        )
        self.assertIsNone(merge.dmm_unit_size)
        self.assertIsNone(merge.dmm_unit_interfacing)

    def test_empty_repository_has_no_commits(self) -> None:
        from repoecg.commits.mine import mine_commits

        with tempfile.TemporaryDirectory() as td:
            _git_init(td)
            self.assertEqual(mine_commits(td), ([], []))

    def test_not_a_repository(self) -> None:
        from repoecg.commits.mine import mine_commits
        from repoecg.errors import ExitCode, NotARepoError

        with tempfile.TemporaryDirectory() as td:
            with self.assertRaises(NotARepoError) as ctx:
                mine_commits(os.path.join(td, "nope"))
        self.assertEqual(ctx.exception.exit_code, ExitCode.NOT_FOUND)

    def test_unknown_branch_fails(self) -> None:
        from repoecg.commits.mine import mine_commits
        from repoecg.errors import ExecFailureError

        with tempfile.TemporaryDirectory() as td:
            self._scripted_repo(td)
            with self.assertRaises(ExecFailureError):
                mine_commits(td, "no-such-branch")

    def test_write_then_load_keeps_records_and_skips_bad_lines(self) -> None:
        from repoecg.commits.mine import load_commits, mine_commits, write_commits

        with tempfile.TemporaryDirectory() as td:
            repo = os.path.join(td, "repo")
            os.makedirs(repo)
            self._scripted_repo(repo)
            records, _ = mine_commits(repo)

            path = os.path.join(td, "commits.ndjson")
            self.assertEqual(write_commits(path, records), 4)
            with open(path, "a", encoding="utf-8") as fh:
                fh.write('{"sha": "nope"}\n')
            loaded, warnings = load_commits(path)

        self.assertEqual(loaded, records)
        self.assertEqual(len(warnings), 1)
        self.assertIn("malformed_record file=commits.ndjson line=5", warnings[0])

    def test_missing_commit_file_is_empty_history(self) -> None:
        from repoecg.commits.mine import load_commits

        with tempfile.TemporaryDirectory() as td:
            self.assertEqual(load_commits(os.path.join(td, "commits.ndjson")), ([], []))


if __name__ == "__main__":
    raise SystemExit(unittest.main())
