from __future__ import annotations

import os
import tempfile
import unittest
from typing import Any

SLUG = "acme/widget"


def _utts(label: str, *texts: str) -> list[Any]:
    from repoecg.wordscore import LabeledUtterance

    return [LabeledUtterance(("review", i), SLUG, t, label) for i, t in enumerate(texts, start=1)]  # type: ignore[arg-type]


def _comment(cid: int, body: str, kind: str = "review") -> Any:
    from repoecg.githost.records import CommentRecord

    return CommentRecord(
        repo_slug=SLUG,
        parent_kind=kind,
        parent_number=2,
        comment_id=cid,
        author_login="bob",
        author_association="NONE",
        created_at=0,
        body=body,
    )


class TestCleanText(unittest.TestCase):
    def test_lowercases_and_drops_punctuation(self) -> None:
        from repoecg.wordscore import clean_text

        self.assertEqual(clean_text("LGTM!"), "lgtm")
        self.assertEqual(clean_text("Don't merge, yet."), "don't merge yet")

    def test_drops_code_urls_and_mentions(self) -> None:
        from repoecg.wordscore import clean_text

        self.assertEqual(clean_text("see `foo()` at https://x.y"), "see at")
        self.assertEqual(clean_text("@bob thanks\n```\nx = 1\n```"), "thanks")
        self.assertEqual(clean_text("mail me@example.org"), "mail me example org")

    def test_ngrams(self) -> None:
        from repoecg.wordscore import ngrams

        self.assertEqual(ngrams(["a", "b", "c"], 2), ["a", "b", "c", "a b", "b c"])
        self.assertEqual(ngrams(["a"], 3), ["a"])


class TestLabeledUtterances(unittest.TestCase):
    def test_unscored_skipped_and_empty_dropped(self) -> None:
        from repoecg.wordscore import labeled_utterances

        comments = [
            _comment(3, "Rename `x` please"),
            _comment(1, "ok"),
            _comment(2, "`only_code()`"),
            _comment(4, "no score for me"),
        ]
        utts, dropped = labeled_utterances(
            comments, {("review", 1): False, ("review", 2): True, ("review", 3): True}
        )

        self.assertEqual([(u.key, u.text, u.label) for u in utts], [
            (("review", 1), "ok", "not_useful"),
            (("review", 3), "rename please", "useful"),
        ])
        self.assertEqual(dropped, 1)

    def test_same_id_in_both_spaces_keeps_both(self) -> None:
        from repoecg.wordscore import labeled_utterances

        comments = [_comment(5, "lgtm", kind="pull"), _comment(5, "rename it")]
        utts, _ = labeled_utterances(
            comments, {("issue", 5): False, ("review", 5): True}
        )

        self.assertEqual(
            [(u.key, u.label) for u in utts],
            [(("issue", 5), "not_useful"), (("review", 5), "useful")],
        )


class TestFightingWords(unittest.TestCase):
    def test_signs_follow_class(self) -> None:
        from repoecg.wordscore import fighting_words

        got = fighting_words(
            _utts("useful", "line line fix"),
            _utts("not_useful", "ok ok good"),
            ngram_max=1,
            min_count=1,
            top_n=1,
        )
        by_token = {t.token: t for t in got}

        self.assertEqual([t.token for t in got], ["line", "fix", "good", "ok"])
        self.assertGreater(by_token["line"].z, 0)
        self.assertLess(by_token["ok"].z, 0)
        self.assertAlmostEqual(by_token["fix"].z, -by_token["good"].z)
        self.assertEqual((by_token["line"].count_useful, by_token["line"].count_not_useful), (2, 0))
        self.assertEqual(by_token["line"].top_class, "useful")
        self.assertEqual(by_token["ok"].top_class, "not_useful")
        self.assertEqual(by_token["fix"].top_class, "")

    def test_swapping_classes_negates_z(self) -> None:
        from repoecg.wordscore import fighting_words

        a = _utts("useful", "fix the test", "fix docs please")
        b = _utts("not_useful", "thanks for the test", "looks fine thanks")
        forward = {t.token: t.z for t in fighting_words(a, b, min_count=1)}
        backward = {t.token: t.z for t in fighting_words(b, a, min_count=1)}

        self.assertEqual(set(forward), set(backward))
        for token, z in forward.items():
            self.assertAlmostEqual(z, -backward[token])

    def test_identical_corpora_score_zero(self) -> None:
        from repoecg.wordscore import fighting_words

        texts = ("fix this please", "looks good")
        got = fighting_words(_utts("useful", *texts), _utts("not_useful", *texts), min_count=1)

        self.assertTrue(got)
        for t in got:
            self.assertAlmostEqual(t.z, 0.0)

    def test_min_count_filters_rare_tokens(self) -> None:
        from repoecg.wordscore import fighting_words

        got = fighting_words(
            _utts("useful", "line line fix"),
            _utts("not_useful", "ok ok line good"),
            ngram_max=1,
            min_count=3,
        )
        self.assertEqual([t.token for t in got], ["line"])

    def test_single_class_corpus(self) -> None:
        from repoecg.errors import ExitCode, SingleClassCorpusError
        from repoecg.wordscore import fighting_words

        with self.assertRaises(SingleClassCorpusError) as ctx:
            fighting_words(_utts("useful", "fix it"), [])
        self.assertEqual(ctx.exception.exit_code, ExitCode.SINGLE_CLASS)

    def test_bad_parameters(self) -> None:
        from repoecg.wordscore import fighting_words

        with self.assertRaises(ValueError):
            fighting_words(_utts("useful", "a"), _utts("not_useful", "b"), alpha=0)


class TestPlot(unittest.TestCase):
    def _scores(self) -> list[Any]:
        from repoecg.wordscore import fighting_words

        return fighting_words(
            _utts("useful", "line line fix"),
            _utts("not_useful", "ok ok good"),
            ngram_max=1,
            min_count=1,
            top_n=1,
        )

    def test_csv_columns(self) -> None:
        from repoecg.wordscore import write_fighting_words_csv

        with tempfile.TemporaryDirectory() as td:
            path = os.path.join(td, "fighting_words.csv")
            write_fighting_words_csv(path, self._scores())
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()

        self.assertEqual(lines[0], "token,count_useful,count_not_useful,log_odds,z,top10_class")
        self.assertEqual(len(lines), 5)
        self.assertTrue(lines[1].startswith("line,2,0,"))
        self.assertTrue(lines[1].endswith(",useful"))

    def test_scatter_is_deterministic_and_labels_top_tokens(self) -> None:
        from repoecg.wordscore import render_scatter_svg

        a = render_scatter_svg(self._scores(), "P1: useful vs not useful")
        b = render_scatter_svg(self._scores(), "P1: useful vs not useful")
        self.assertEqual(a, b)
        svg = a.decode("utf-8")
        self.assertIn("P1: useful vs not useful", svg)
        self.assertIn(">line<", svg)
        self.assertIn(">ok<", svg)
        self.assertNotIn(">fix<", svg)

    def test_empty_scores_still_render(self) -> None:
        from repoecg.wordscore import render_scatter_svg

        self.assertTrue(render_scatter_svg([], "empty").startswith(b"<?xml"))


if __name__ == "__main__":
    raise SystemExit(unittest.main())
