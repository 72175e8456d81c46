"""E-book ingestion: EPUB container resolution and XHTML flattening.

An EPUB file is a ZIP archive whose META-INF/container.xml points at a package
document (OPF). The package document's manifest maps item ids to files and its
spine lists the reading order. This module resolves that chain with the
standard library and flattens each content document to plain text with a
tolerant tag-stripping scanner; it does not validate markup.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
import zipfile
from dataclasses import dataclass
from pathlib import Path, PurePosixPath
from urllib.parse import unquote

from .errors import EmptySpine, MalformedOpf, MissingContainer, NotZip

CONTAINER_PATH = "META-INF/container.xml"

# Elements whose end marks a line break in the flattened text.
BLOCK_TAGS = frozenset(
    {"p", "div", "h1", "h2", "h3", "h4", "h5", "h6", "li", "tr", "section"}
)

# The only named character references decoded; anything else passes through.
NAMED_ENTITIES = {
    "amp": "&",
    "lt": "<",
    "gt": ">",
    "quot": '"',
    "apos": "'",
    "nbsp": " ",
}

XHTML_MEDIA_TYPES = {"application/xhtml+xml", "text/html"}
XHTML_SUFFIXES = (".xhtml", ".html", ".htm", ".xml")


@dataclass(frozen=True)
class SectionText:
    """Plain text extracted from one content document."""

    text: str
    source_path: str = ""


@dataclass(frozen=True)
class EbookArchive:
    """Content documents of an e-book in spine order.

    ``content_docs`` holds (archive path, raw XHTML text) pairs.
    """

    content_docs: tuple[tuple[str, str], ...]
    title: str | None = None


def _local(tag: str) -> str:
    """Element tag without its namespace prefix."""
    return tag.rsplit("}", 1)[-1]


def open_epub(path: str | Path) -> EbookArchive:
    """Open an EPUB file and pull its content documents in spine order.

    Raises :class:`NotZip`, :class:`MissingContainer`, :class:`MalformedOpf`,
    or :class:`EmptySpine` for the corresponding defects. Content documents
    are decoded as UTF-8 with replacement, so stray bytes never abort a run.
    """
    path = Path(path)
    try:
        archive = zipfile.ZipFile(path)
    except zipfile.BadZipFile:
        raise NotZip(path) from None
    with archive:
        names = set(archive.namelist())
        if CONTAINER_PATH not in names:
            raise MissingContainer(path)
        try:
            container = ET.fromstring(archive.read(CONTAINER_PATH))
        except ET.ParseError as exc:
            raise MalformedOpf(f"unreadable container: {exc}", path) from None
        rootfile = container.find(".//{*}rootfile")
        opf_path = None if rootfile is None else rootfile.get("full-path")
        if not opf_path or opf_path not in names:
            raise MalformedOpf("container names no readable package document", path)
        try:
            opf = ET.fromstring(archive.read(opf_path))
        except ET.ParseError as exc:
            raise MalformedOpf(f"unreadable package document: {exc}", opf_path) from None

        manifest: dict[str, tuple[str, str]] = {}
        for item in opf.iterfind(".//{*}manifest/{*}item"):
            item_id = item.get("id")
            href = item.get("href")
            if item_id and href:
                manifest[item_id] = (href, item.get("media-type", ""))

        opf_dir = PurePosixPath(opf_path).parent
        docs: list[tuple[str, str]] = []
        itemrefs = list(opf.iterfind(".//{*}spine/{*}itemref"))
        for ref in itemrefs:
            entry = manifest.get(ref.get("idref", ""))
            if entry is None:
                continue
            href, media_type = entry
            if not _is_xhtml(href, media_type):
                continue
            doc_path = _resolve_href(opf_dir, href)
            if doc_path not in names:
                continue
            text = archive.read(doc_path).decode("utf-8", errors="replace")
            docs.append((doc_path, text))
        if not docs:
            raise EmptySpine(path)

        title_el = opf.find(".//{*}metadata/{*}title")
        title = title_el.text.strip() if title_el is not None and title_el.text else None
    return EbookArchive(content_docs=tuple(docs), title=title)


def _is_xhtml(href: str, media_type: str) -> bool:
    if media_type.lower() in XHTML_MEDIA_TYPES:
        return True
    return media_type == "" and href.lower().endswith(XHTML_SUFFIXES)


def _resolve_href(opf_dir: PurePosixPath, href: str) -> str:
    raw = unquote(href.split("#", 1)[0])
    parts: list[str] = []
    for piece in (opf_dir / raw).parts:
        if piece == "..":
            if parts:
                parts.pop()
        elif piece not in (".", ""):
            parts.append(piece)
    return "/".join(parts)


def _scan_tag(markup: str, start: int) -> tuple[str, bool, bool, int]:
    """Parse a tag starting at ``markup[start] == '<'``.

    Returns (name, is_closing, is_self_closing, index after '>'). Quoted
    attribute values may contain '>'; an unterminated tag swallows the rest
    of the document.
    """
    i = start + 1
    n = len(markup)
    closing = i < n and markup[i] == "/"
    if closing:
        i += 1
    name_start = i
    while i < n and (markup[i].isalnum() or markup[i] in ":-"):
        i += 1
    name = markup[name_start:i].lower()
    quote: str | None = None
    last_solid = ""
    while i < n:
        ch = markup[i]
        if quote is not None:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == ">":
            return name, closing, last_solid == "/", i + 1
        if not ch.isspace():
            last_solid = ch
        i += 1
    return name, closing, False, n


def _strip_markup(markup: str) -> str:
    out: list[str] = []
    i = 0
    n = len(markup)
    skip_until: str | None = None  # closing tag that ends a dropped region
    while i < n:
        ch = markup[i]
        if ch == "<":
            if markup.startswith("<!--", i):
                end = markup.find("-->", i + 4)
                i = n if end < 0 else end + 3
                continue
            if i + 1 < n and (markup[i + 1].isalpha() or markup[i + 1] in "/!?"):
                name, closing, self_closing, i = _scan_tag(markup, i)
                if skip_until is not None:
                    if closing and name == skip_until:
                        skip_until = None
                    continue
                if name in ("script", "style") and not closing and not self_closing:
                    skip_until = name
                elif name == "br" or (closing and name in BLOCK_TAGS):
                    out.append("\n")
                continue
            # a bare '<' (e.g. "a < b") is ordinary text
        if skip_until is None:
            out.append(ch)
        i += 1
    return "".join(out)


_ENTITY_RE = re.compile(r"&(#[0-9]+|#[xX][0-9a-fA-F]+|[a-zA-Z]+);")


def _decode_entity(match: re.Match[str]) -> str:
    body = match.group(1)
    if body.startswith("#"):
        try:
            code = int(body[2:], 16) if body[1] in "xX" else int(body[1:])
            return chr(code)
        except (ValueError, OverflowError):
            return match.group(0)
    return NAMED_ENTITIES.get(body, match.group(0))


def flatten_xhtml(doc: str, source_path: str = "") -> SectionText:
    """Strip markup from one content document, keeping readable text.

    Tags are removed; the contents of script and style elements are dropped;
    closing block elements (and any ``br``) become newlines; character
    references from a small table plus numeric references are decoded.
    Whitespace in text is preserved as written — collapsing happens later in
    the cleaning stage.
    """
    return SectionText(text=_decode_entity_pass(_strip_markup(doc)), source_path=source_path)


def _decode_entity_pass(text: str) -> str:
    return _ENTITY_RE.sub(_decode_entity, text)


def epub_to_sections(archive: EbookArchive) -> list[SectionText]:
    """Flatten every content document of an archive, in spine order."""
    return [flatten_xhtml(text, source_path=path) for path, text in archive.content_docs]


def load_sections(path: str | Path) -> list[SectionText]:
    """Read an input file as sections.

    EPUB inputs go through the container/spine machinery; a plain ``.txt``
    file is treated as a single section.
    """
    path = Path(path)
    if path.suffix.lower() == ".txt":
        text = path.read_bytes().decode("utf-8", errors="replace")
        return [SectionText(text=text, source_path=path.name)]
    return epub_to_sections(open_epub(path))
