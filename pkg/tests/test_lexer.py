"""Sentence splitting, spans, and invalidation."""

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gen import compose_source
from oracles import ModelLexError, reference_split
from proofdeck.lexer import LexError, Sentence, invalidate_from, scan, split, split_prefix

FOUR = "Lemma a : True. Proof. exact I. Qed."


# The reference automaton is trusted by the fuzz tests below, so its own
# behavior is pinned against hand-built cases first.


def test_model_hand_built_cases():
    assert [(s, e) for _, s, e in reference_split(FOUR)] == [(0, 15), (16, 22), (23, 31), (32, 36)]
    assert [t for t, _, _ in reference_split("(* x. (* y. *) *) Check t.")] == ["Check t."]
    assert [t for t, _, _ in reference_split("Check A.B.mod.")] == ["Check A.B.mod."]
    assert [t for t, _, _ in reference_split('Check "a.".')] == ['Check "a.".']
    assert [t for t, _, _ in reference_split('Check "a""b.".')] == ['Check "a""b.".']
    assert reference_split("   \t\n ") == []
    assert [t for t, _, _ in reference_split("a.. b.")] == ["a..", "b."]
    with pytest.raises(ModelLexError) as exc:
        reference_split("Check (* nope.")
    assert (exc.value.message, exc.value.offset) == ("unterminated comment", 6)
    with pytest.raises(ModelLexError) as exc:
        reference_split('Check "nope.')
    assert (exc.value.message, exc.value.offset) == ("unterminated string", 6)
    with pytest.raises(ModelLexError) as exc:
        reference_split("  Check t")
    assert (exc.value.message, exc.value.offset) == ("unterminated sentence", 2)


def test_four_sentence_starts():
    assert [s.start for s in split(FOUR)] == [0, 16, 23, 32]
    assert [s.text for s in split(FOUR)] == ["Lemma a : True.", "Proof.", "exact I.", "Qed."]


def test_nested_comments_shield_dots():
    out = split("(* x. (* y. *) *) Check t.")
    assert [s.text for s in out] == ["Check t."]
    assert out[0].start == 18


def test_dotted_identifiers_do_not_terminate():
    assert [s.text for s in split("Check A.B.mod.")] == ["Check A.B.mod."]


def test_strings_shield_dots_and_escaped_quotes():
    assert [s.text for s in split('Check "a. b""c.".')] == ['Check "a. b""c.".']


def test_comment_inside_sentence_is_kept():
    assert [s.text for s in split("Check (* c. *) t.")] == ["Check (* c. *) t."]


def test_quote_inside_comment_is_not_a_string():
    assert [s.text for s in split('(* " *) Check t.')] == ["Check t."]


def test_multibyte_offsets_are_bytes():
    src = '(* é *) Check t.'
    out = split(src)
    assert out[0].start == len('(* é *) '.encode("utf-8"))


def test_error_offsets():
    with pytest.raises(LexError) as exc:
        split("Check (* a (* b *) nope.")
    assert (exc.value.message, exc.value.offset) == ("unterminated comment", 6)
    with pytest.raises(LexError) as exc:
        split('Check "nope.')
    assert (exc.value.message, exc.value.offset) == ("unterminated string", 6)
    with pytest.raises(LexError) as exc:
        split("  Check t")
    assert (exc.value.message, exc.value.offset) == ("unterminated sentence", 2)


def test_invalidate_from_examples():
    sentences = split(FOUR)
    assert invalidate_from(sentences, 25) == 2
    assert invalidate_from(sentences, 0) == 0
    assert invalidate_from(sentences, len(FOUR) + 5) == 4


def test_invalidate_from_boundary():
    sentences = split(FOUR)
    # first sentence ends at 15; an edit exactly there still touches it
    assert invalidate_from(sentences, 15) == 0
    assert invalidate_from(sentences, 16) == 1


def test_split_prefix_returns_remainder_offset():
    assert split_prefix("Check a. Check b")[1] == 8
    assert [s.text for s in split_prefix("Check a. Check b")[0]] == ["Check a."]
    assert split_prefix("Check a. (* open")[1] == 8
    assert split_prefix("")[0] == []
    assert split_prefix("  (* only a comment *) ") == ([], 0)


def test_split_prefix_never_raises_on_junk():
    for src in ["(*", '"', "x", "", "a.b"]:
        sentences, end = split_prefix(src)
        assert sentences == [] and end == 0
    # a lone dot is a complete sentence; rejecting it is the parser's job
    assert split_prefix(".") == ([Sentence(".", 0, 1)], 1)


def test_scan_covers_source_exactly():
    src = "(* gap *) Lemma a : True. \t exact I.  "
    pieces = list(scan(src))
    assert "".join(text for _, _, _, text in pieces) == src
    spans = [(s, e) for _, s, e in [(p[1], p[1], p[2]) for p in pieces]]
    assert all(a[1] == b[0] for a, b in zip(spans, spans[1:]))


def test_reconstruction_from_sentences_and_gaps():
    src = " (* c *) Check a.  Check b. "
    sentences = split(src)
    data = src.encode("utf-8")
    rebuilt = b""
    pos = 0
    for s in sentences:
        rebuilt += data[pos:s.start] + s.text.encode("utf-8")
        pos = s.end
    rebuilt += data[pos:]
    assert rebuilt == data


def _behavior(fn, src):
    try:
        return [(s[0], s[1], s[2]) for s in fn(src)]
    except (LexError, ModelLexError) as e:
        return ("error", e.message, e.offset)


def _split_tuples(src):
    return [(s.text, s.start, s.end) for s in split(src)]


def test_fuzz_agrees_with_model():
    rng = random.Random(20260817)
    for _ in range(400):
        src = compose_source(rng, allow_broken=True)
        assert _behavior(_split_tuples, src) == _behavior(reference_split, src), repr(src)


@given(st.integers(0, 2**32 - 1))
def test_random_sources_agree_with_model(seed):
    src = compose_source(random.Random(seed), allow_broken=True)
    assert _behavior(_split_tuples, src) == _behavior(reference_split, src)


_sentence_texts = st.sampled_from(
    ["Check a.", "Lemma t : A -> B.", "exact I.", "Check A.B.c.", 'Check "s.".', "split."]
)
_gaps = st.sampled_from([" ", "\n", "\t ", " (* gap. *) ", "\n(* a (* b. *) *)\n"])


@given(st.lists(st.tuples(_gaps, _sentence_texts), min_size=0, max_size=8), _gaps)
def test_prefix_stability_under_extension(pieces, tail_gap):
    src = "".join(g + t for g, t in pieces)
    base = split(src)
    extended = split(src + tail_gap + "Check zz.")
    assert [(s.text, s.start, s.end) for s in extended[: len(base)]] == [
        (s.text, s.start, s.end) for s in base
    ]
    assert len(extended) == len(base) + 1
