"""Stopword removal, the lemmatizer, and whole-corpus normalization."""

from __future__ import annotations

import pytest

from epic_embed.normalize import (
    LemmaLexicon,
    default_lexicon,
    lemmatize,
    load_stopwords,
    normalize_corpus,
    remove_stopwords,
)


def test_bundled_stopwords_cover_the_function_words():
    stops = load_stopwords()
    for word in ("the", "of", "to", "again", "in", "his", "and", "with", "on"):
        assert word in stops
    # content words from the corpus must survive
    for word in ("upon", "one", "thee", "holy", "told", "care", "day"):
        assert word not in stops


def test_remove_stopwords_preserves_order_and_case_folds():
    stops = frozenset({"the", "of"})
    assert remove_stopwords(["The", "fall", "of", "kings", "."], stops) == [
        "fall", "kings", ".",
    ]


def test_noun_detachment_rules():
    lexicon = LemmaLexicon()  # rules only, no exception table
    assert lemmatize("churches", "noun", lexicon) == "church"
    assert lemmatize("wishes", "noun", lexicon) == "wish"
    assert lemmatize("houses", "noun", lexicon) == "hous"  # no dictionary check
    assert lemmatize("boxes", "noun", lexicon) == "box"
    assert lemmatize("houris", "noun", lexicon) == "houri"
    assert lemmatize("ponies", "noun", lexicon) == "pony"
    assert lemmatize("brothers", "noun", lexicon) == "brother"
    assert lemmatize("endeavours", "noun", lexicon) == "endeavour"


def test_rule_must_leave_a_nonempty_stem():
    lexicon = LemmaLexicon()
    assert lemmatize("s", "noun", lexicon) == "s"
    # the 'ies' rule would slice the word away entirely, so it is skipped
    # and the bare 's' rule fires instead
    assert lemmatize("ies", "noun", lexicon) == "ie"


def test_punctuation_and_bare_words_pass_through():
    lexicon = LemmaLexicon()
    assert lemmatize(";", "noun", lexicon) == ";"
    assert lemmatize("exile", "noun", lexicon) == "exile"
    assert lemmatize("defeated", "noun", lexicon) == "defeated"


def test_exceptions_win_over_rules():
    lexicon = LemmaLexicon(exceptions={("oxen", "noun"): "ox"})
    assert lemmatize("oxen", "noun", lexicon) == "ox"
    # the same surface under another part of speech falls back to the rules
    assert lemmatize("oxen", "verb", lexicon) == "oxen"


def test_bundled_exception_table():
    lexicon = default_lexicon()
    assert lemmatize("men", "noun", lexicon) == "man"
    assert lemmatize("children", "noun", lexicon) == "child"
    assert lemmatize("feet", "noun", lexicon) == "foot"
    # verb irregulars must not fire under the default noun reading
    assert lemmatize("told", "noun", lexicon) == "told"
    assert lemmatize("told", "verb", lexicon) == "tell"


def test_verb_and_adjective_rules():
    lexicon = LemmaLexicon()
    assert lemmatize("walking", "verb", lexicon) == "walk"
    assert lemmatize("walked", "verb", lexicon) == "walk"
    assert lemmatize("passes", "verb", lexicon) == "pass"
    assert lemmatize("carries", "verb", lexicon) == "carry"
    assert lemmatize("greater", "adj", lexicon) == "great"
    assert lemmatize("happiest", "adj", lexicon) == "happy"


def test_unknown_pos_rejected():
    with pytest.raises(ValueError):
        lemmatize("word", "interjection")


def test_lexicon_load_rejects_malformed_rows(tmp_path):
    bad = tmp_path / "table.tsv"
    bad.write_text("just_two\tfields\n", encoding="utf-8")
    with pytest.raises(ValueError):
        LemmaLexicon.load(bad)
    bad.write_text("word\tlemma\tparticle\n", encoding="utf-8")
    with pytest.raises(ValueError):
        LemmaLexicon.load(bad)


def test_normalize_corpus_stem_mode():
    corpus = [["the", "endeavours", "of", "kings", "."]]
    stops = frozenset({"the", "of"})
    assert normalize_corpus(corpus, "stem", stops) == [["endeavour", "king", "."]]


def test_normalize_corpus_lemma_mode():
    corpus = [["the", "endeavours", "of", "kings", "."]]
    stops = frozenset({"the", "of"})
    assert normalize_corpus(corpus, "lemma", stops) == [["endeavour", "king", "."]]


def test_normalize_corpus_none_mode_only_removes_stopwords():
    corpus = [["the", "endeavours", "."], ["the", "of"]]
    stops = frozenset({"the", "of"})
    # the second sentence empties out and is dropped
    assert normalize_corpus(corpus, "none", stops) == [["endeavours", "."]]


def test_normalize_corpus_rejects_unknown_mode():
    with pytest.raises(ValueError):
        normalize_corpus([["a"]], "morph")


# The corpus sentence the normalizers are accountable for, both ways.
SENTENCE_470 = [
    "the", "endeavours", "of", "duryodhana", "to", "engage", "yudhishtira",
    "again", "in", "the", "game", ";", "and", "the", "exile", "of", "the",
    "defeated", "yudhishtira", "with", "his", "brothers", ".",
]


def test_corpus_sentence_stems():
    out = normalize_corpus([SENTENCE_470], "stem", load_stopwords())
    assert out == [[
        "endeavour", "duryodhana", "engag", "yudhishtira", "game", ";",
        "exil", "defeat", "yudhishtira", "brother", ".",
    ]]


def test_corpus_sentence_lemmas():
    out = normalize_corpus([SENTENCE_470], "lemma", load_stopwords())
    assert out == [[
        "endeavour", "duryodhana", "engage", "yudhishtira", "game", ";",
        "exile", "defeated", "yudhishtira", "brother", ".",
    ]]
