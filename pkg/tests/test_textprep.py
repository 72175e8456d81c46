"""Cleaning, sentence splitting, and tokenization."""

from __future__ import annotations

import string

from hypothesis import given
from hypothesis import strategies as st

from epic_embed.textprep import (
    CleanCorpus,
    clean_text,
    load_abbreviations,
    read_token_corpus,
    sentence_lengths,
    split_sentences,
    tokenize_corpus,
    tokenize_words,
    write_token_corpus,
)


def test_clean_lowercases_and_removes_commas():
    out = clean_text(["The Sage, the King,\nand the\tCourt."])
    assert out.text == "the sage the king and the court."


def test_clean_apostrophe_delete_and_space():
    raw = ["the translator's preface, the king’s court"]
    assert clean_text(raw).text == "the translators preface the kings court"
    assert (
        clean_text(raw, apostrophe="space").text
        == "the translator s preface the king s court"
    )


def test_clean_strict_removes_semicolons():
    raw = ["a; b; c"]
    assert clean_text(raw).text == "a; b; c"
    assert clean_text(raw, strict_clean=True).text == "a b c"


def test_clean_joins_sections_with_one_space():
    out = clean_text(["first section ends.", "Second begins."])
    assert out.text == "first section ends. second begins."


def test_clean_accepts_section_objects():
    from epic_embed.ingest import SectionText

    out = clean_text([SectionText(text="One,"), SectionText(text="Two.")])
    assert out.text == "one two."


def test_split_plain_sentences():
    text = "the war began. the heroes fought! who won? no one knew"
    assert split_sentences(text, frozenset()) == [
        "the war began.",
        "the heroes fought!",
        "who won?",
        "no one knew",
    ]


def test_split_blocks_abbreviations_and_single_letters():
    abbreviations = load_abbreviations()
    text = "mr. smith met p. sharma at st. james. they spoke."
    assert split_sentences(text, abbreviations) == [
        "mr. smith met p. sharma at st. james.",
        "they spoke.",
    ]


def test_split_terminator_must_precede_whitespace():
    # interior periods (decimals, section numbers) never split
    assert split_sentences("see 3.14 and verse 1.2.3 now. done.", frozenset()) == [
        "see 3.14 and verse 1.2.3 now.",
        "done.",
    ]


def test_split_terminator_at_end_of_text():
    assert split_sentences("it ended.", frozenset()) == ["it ended."]


def test_tokenize_peels_edge_punctuation():
    assert tokenize_words('"he said;') == ['"', "he", "said", ";"]
    assert tokenize_words("wait...") == ["wait", ".", ".", "."]
    assert tokenize_words("the end.") == ["the", "end", "."]


def test_tokenize_keeps_interior_hyphens_and_digits():
    assert tokenize_words("the vaka-vadha episode of 1850") == [
        "the", "vaka-vadha", "episode", "of", "1850",
    ]


def test_tokenize_pure_punctuation_chunk():
    assert tokenize_words("a -- b") == ["a", "-", "-", "b"]


def test_tokenize_corpus_drops_empty_sentences():
    assert tokenize_corpus(["one two.", "", "   "]) == [["one", "two", "."]]


def test_sentence_lengths():
    assert sentence_lengths([["a", "b"], ["c"]]) == [2, 1]


# A real sentence from the translated epic, cleaned and tokenized end to end.
def test_full_chain_on_corpus_sentence():
    raw = (
        "The endeavours of Duryodhana to engage Yudhishtira again in the game; "
        "and the exile of the defeated Yudhishtira with his brothers."
    )
    cleaned = clean_text([raw])
    sentences = split_sentences(cleaned)
    assert len(sentences) == 1
    assert tokenize_words(sentences[0]) == [
        "the", "endeavours", "of", "duryodhana", "to", "engage", "yudhishtira",
        "again", "in", "the", "game", ";", "and", "the", "exile", "of", "the",
        "defeated", "yudhishtira", "with", "his", "brothers", ".",
    ]


def test_token_corpus_round_trip(tmp_path):
    corpus = [["one", "two", "."], ["three", "!"]]
    path = tmp_path / "tokens.txt"
    write_token_corpus(corpus, path)
    assert read_token_corpus(path) == corpus


WORDS = st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=8)


@given(st.lists(WORDS, min_size=1, max_size=30))
def test_cleaned_text_has_single_spaces(words):
    out = clean_text([" \n ".join(words)]).text
    assert "  " not in out
    assert out == out.strip()
    assert out == out.lower()
    assert "," not in out


@given(st.text(alphabet=string.ascii_lowercase + " .;!?-'\"", max_size=60))
def test_tokens_preserve_every_non_space_character(sentence):
    assert "".join(tokenize_words(sentence)) == "".join(sentence.split())


@given(
    st.lists(
        st.tuples(st.lists(WORDS, min_size=1, max_size=6), st.sampled_from(".!?")),
        min_size=1,
        max_size=8,
    )
)
def test_splitting_joined_sentences_recovers_them(parts):
    # terminated multi-word sentences survive a join/split round trip when no
    # word is a single letter or listed abbreviation (those block the '.')
    abbreviations = load_abbreviations()
    sentences = [
        " ".join(words) + mark
        for words, mark in parts
        if all(len(word) > 1 and word not in abbreviations for word in words)
        or mark != "."
    ]
    text = " ".join(sentences)
    assert split_sentences(CleanCorpus(text), abbreviations) == sentences
