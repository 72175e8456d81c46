"""EPUB container resolution and XHTML flattening."""

from __future__ import annotations

import zipfile

import pytest

from epic_embed.errors import EmptySpine, MalformedOpf, MissingContainer, NotZip
from epic_embed.ingest import (
    epub_to_sections,
    flatten_xhtml,
    load_sections,
    open_epub,
)

CHAPTER_ONE = """<?xml version="1.0"?>
<html xmlns="http://www.w3.org/1999/xhtml">
<head><title>ch1</title></head>
<body>
<h1>Adi Parva</h1>
<p>The sage spoke, and the king listened.</p>
<p>A second paragraph.</p>
</body>
</html>
"""

CHAPTER_TWO = """<html><body><p>Another chapter entirely.</p></body></html>"""


def test_open_epub_reads_spine_in_order(make_epub):
    path = make_epub([("ch1.xhtml", CHAPTER_ONE), ("ch2.xhtml", CHAPTER_TWO)])
    book = open_epub(path)
    assert book.title == "A Test Book"
    assert [doc_path for doc_path, _ in book.content_docs] == [
        "OEBPS/ch1.xhtml",
        "OEBPS/ch2.xhtml",
    ]
    sections = epub_to_sections(book)
    assert "the king listened" in sections[0].text
    assert sections[1].text.strip() == "Another chapter entirely."
    assert sections[0].source_path == "OEBPS/ch1.xhtml"


def test_non_xhtml_manifest_items_are_skipped(make_epub):
    path = make_epub(
        [("ch1.xhtml", CHAPTER_ONE)],
        extra_items=[("css", "style.css", "text/css"), ("img", "cover.jpg", "image/jpeg")],
        extra_files={"OEBPS/style.css": "p { color: red }", "OEBPS/cover.jpg": "junk"},
    )
    book = open_epub(path)
    assert len(book.content_docs) == 1


def test_href_with_subdirectory_and_percent_encoding(make_epub, tmp_path):
    # hrefs resolve relative to the package document, with %20 decoded
    path = make_epub([("text/my%20chapter.xhtml", "")], name="empty.epub")
    # the builder wrote the encoded name; store the decoded one instead
    with zipfile.ZipFile(path) as original:
        payload = {name: original.read(name) for name in original.namelist()}
    fixed = tmp_path / "fixed.epub"
    with zipfile.ZipFile(fixed, "w") as archive:
        for name, body in payload.items():
            if name.endswith("my%20chapter.xhtml"):
                archive.writestr("OEBPS/text/my chapter.xhtml", CHAPTER_TWO)
            else:
                archive.writestr(name, body)
    book = open_epub(fixed)
    assert book.content_docs[0][0] == "OEBPS/text/my chapter.xhtml"


def test_not_a_zip(tmp_path):
    path = tmp_path / "fake.epub"
    path.write_text("this is not an archive")
    with pytest.raises(NotZip):
        open_epub(path)


def test_missing_container(tmp_path):
    path = tmp_path / "bare.epub"
    with zipfile.ZipFile(path, "w") as archive:
        archive.writestr("mimetype", "application/epub+zip")
    with pytest.raises(MissingContainer):
        open_epub(path)


def test_container_pointing_nowhere(tmp_path):
    path = tmp_path / "dangling.epub"
    with zipfile.ZipFile(path, "w") as archive:
        archive.writestr(
            "META-INF/container.xml",
            '<container><rootfiles><rootfile full-path="gone.opf"/></rootfiles></container>',
        )
    with pytest.raises(MalformedOpf):
        open_epub(path)


def test_unparseable_container(tmp_path):
    path = tmp_path / "broken.epub"
    with zipfile.ZipFile(path, "w") as archive:
        archive.writestr("META-INF/container.xml", "<container><unclosed>")
    with pytest.raises(MalformedOpf):
        open_epub(path)


def test_empty_spine(make_epub):
    path = make_epub([])
    with pytest.raises(EmptySpine):
        open_epub(path)


def test_spine_reference_to_missing_file_is_skipped(make_epub, tmp_path):
    # one good document plus a manifest entry whose file is absent
    path = make_epub(
        [("ch1.xhtml", CHAPTER_ONE)],
        extra_items=[("ghost", "ghost.xhtml", "application/xhtml+xml")],
    )
    book = open_epub(path)
    assert len(book.content_docs) == 1


def test_flatten_drops_tags_and_scripts():
    doc = (
        "<html><head><style>p{}</style><script>var x = '<p>';</script></head>"
        "<body><p>keep <b>this</b> text</p><p>and this</p></body></html>"
    )
    text = flatten_xhtml(doc).text
    assert "keep this text" in text
    assert "var x" not in text
    assert "p{}" not in text
    # closing block tags become newlines
    assert text.count("\n") >= 2


def test_flatten_handles_br_comments_and_entities():
    doc = "one<br/>two<!-- hidden -->&amp;&lt;&gt; &#65;&#x42; &nbsp;end &unknown;"
    text = flatten_xhtml(doc).text
    assert "one\ntwo" in text
    assert "hidden" not in text
    assert "&<>" in text
    assert "AB" in text
    assert "\xa0" not in text  # nbsp becomes a plain space
    assert "&unknown;" in text  # unrecognized references stay verbatim


def test_flatten_bare_less_than_is_text():
    assert "a < b" in flatten_xhtml("<p>a < b</p>").text


def test_flatten_quoted_attribute_with_angle_bracket():
    text = flatten_xhtml('<p title="a > b">inside</p>').text
    assert text.strip() == "inside"
    assert "a > b" not in text


def test_load_sections_plain_text(tmp_path):
    source = tmp_path / "book.txt"
    source.write_text("Just some plain text.", encoding="utf-8")
    sections = load_sections(source)
    assert len(sections) == 1
    assert sections[0].text == "Just some plain text."
    assert sections[0].source_path == "book.txt"


def test_load_sections_epub(make_epub):
    path = make_epub([("ch1.xhtml", CHAPTER_ONE), ("ch2.xhtml", CHAPTER_TWO)])
    sections = load_sections(path)
    assert len(sections) == 2
