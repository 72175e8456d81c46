"""Shared fixtures: a synthetic EPUB builder, the bundled mini corpus, and
the acceptance checklist reporter."""

from __future__ import annotations

import zipfile
from contextlib import contextmanager
from pathlib import Path

import pytest

from epic_embed.resources import data_path
from epic_embed.textprep import read_token_corpus

_CHECKLIST: list[str] = []


@contextmanager
def _record(number: int, title: str):
    try:
        yield
    except BaseException as error:
        word = "SKIP" if isinstance(error, pytest.skip.Exception) else "FAIL"
        _CHECKLIST.append(f"[{word}] criterion {number}: {title}")
        raise
    _CHECKLIST.append(f"[PASS] criterion {number}: {title}")


@pytest.fixture
def criterion():
    """Context manager that files one checklist line per acceptance check."""
    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CHECKLIST:
        terminalreporter.section("acceptance checklist")
        for line in sorted(_CHECKLIST, key=lambda text: text.split(":")[0][-1]):
            terminalreporter.write_line(line)

CONTAINER_XML = """<?xml version="1.0" encoding="UTF-8"?>
<container version="1.0" xmlns="urn:oasis:names:tc:opendocument:xmlns:container">
  <rootfiles>
    <rootfile full-path="OEBPS/content.opf" media-type="application/oebps-package+xml"/>
  </rootfiles>
</container>
"""


def opf_document(items: list[tuple[str, str, str]], spine: list[str], title: str) -> str:
    manifest = "\n    ".join(
        f'<item id="{item_id}" href="{href}" media-type="{media}"/>'
        for item_id, href, media in items
    )
    itemrefs = "\n    ".join(f'<itemref idref="{item_id}"/>' for item_id in spine)
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<package xmlns="http://www.idpf.org/2007/opf" version="2.0" unique-identifier="uid">
  <metadata xmlns:dc="http://purl.org/dc/elements/1.1/">
    <dc:title>{title}</dc:title>
  </metadata>
  <manifest>
    {manifest}
  </manifest>
  <spine>
    {itemrefs}
  </spine>
</package>
"""


@pytest.fixture
def make_epub(tmp_path):
    """Build a minimal EPUB file: docs are (href, xhtml text) in spine order."""

    def build(
        docs: list[tuple[str, str]],
        *,
        title: str = "A Test Book",
        name: str = "book.epub",
        extra_items: list[tuple[str, str, str]] | None = None,
        extra_files: dict[str, str] | None = None,
    ) -> Path:
        path = tmp_path / name
        items = [
            (f"doc{i}", href, "application/xhtml+xml")
            for i, (href, _) in enumerate(docs)
        ]
        items.extend(extra_items or [])
        spine = [item_id for item_id, _, _ in items]
        with zipfile.ZipFile(path, "w") as archive:
            archive.writestr("mimetype", "application/epub+zip")
            archive.writestr("META-INF/container.xml", CONTAINER_XML)
            archive.writestr("OEBPS/content.opf", opf_document(items, spine, title))
            for href, body in docs:
                archive.writestr(f"OEBPS/{href}", body)
            for arcname, body in (extra_files or {}).items():
                archive.writestr(arcname, body)
        return path

    return build


@pytest.fixture(scope="session")
def mini_corpus() -> list[list[str]]:
    """The bundled three-sentence sample corpus, tokenized."""
    return read_token_corpus(data_path("mini_corpus.txt"))
