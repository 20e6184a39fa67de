"""HTML purification: reduce a raw page to scoring-ready text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .html import Element, TextNode, collapse_ws, parse_html

# Subtrees that never contribute visible page text.
_SKIP_TAGS = {"script", "style", "head", "title", "template"}

_CHARSET_RE = re.compile(rb"""charset\s*=\s*["']?\s*([A-Za-z0-9_.:\-]+)""", re.IGNORECASE)

# A "<" immediately followed by a letter, "!", "/" or "?" would re-open
# markup if the output were fed to an HTML parser again; any other "<" is
# plain character data.
_MARKUP_OPEN_RE = re.compile(r"<(?=[A-Za-z!/?])")


@dataclass(frozen=True)
class FetchStatus:
    """Outcome of fetching a page: ok, http_error(code), timeout, unreachable."""

    kind: str
    code: int | None = None

    OK_KIND = "ok"

    @classmethod
    def ok(cls) -> "FetchStatus":
        return cls("ok")

    @classmethod
    def http_error(cls, code: int) -> "FetchStatus":
        return cls("http_error", code)

    @classmethod
    def timeout(cls) -> "FetchStatus":
        return cls("timeout")

    @classmethod
    def unreachable(cls) -> "FetchStatus":
        return cls("unreachable")

    @property
    def is_ok(self) -> bool:
        return self.kind == "ok"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "code": self.code}

    @classmethod
    def from_dict(cls, data: dict) -> "FetchStatus":
        return cls(kind=data["kind"], code=data.get("code"))


@dataclass(frozen=True)
class PageContent:
    """Tag-free text of one page plus the link-density measurements."""

    url: str
    title: str
    body_text: str
    anchor_text_len: int
    total_text_len: int
    fetch_status: FetchStatus

    def __post_init__(self):
        if self.anchor_text_len > self.total_text_len:
            raise ValueError("anchor_text_len exceeds total_text_len")

    @classmethod
    def empty(cls, url: str, fetch_status: FetchStatus) -> "PageContent":
        return cls(url=url, title="", body_text="", anchor_text_len=0,
                   total_text_len=0, fetch_status=fetch_status)


def decode_html(raw: bytes) -> str:
    """Decode page bytes: declared charset, then UTF-8, then Latin-1.

    Latin-1 maps every byte, so the chain cannot fail on non-empty input.
    """
    declared = None
    m = _CHARSET_RE.search(raw[:4096])
    if m:
        declared = m.group(1).decode("ascii", "ignore")
    if declared:
        try:
            return raw.decode(declared)
        except (UnicodeDecodeError, LookupError):
            pass
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        return raw.decode("latin-1")


def _neutralize(text: str) -> str:
    return _MARKUP_OPEN_RE.sub("< ", text)


def purify_html(raw: bytes, base_url: str) -> PageContent:
    """Strip markup from ``raw`` and measure text and anchor-text lengths.

    Script, style, comment and head-metadata content is dropped; element
    boundaries become whitespace; character references are decoded by the
    parser.  The page title (if any) is prepended once to the body text so
    it participates in term weighting.  Malformed markup never raises; empty
    input yields an empty page.
    """
    if not raw:
        return PageContent.empty(base_url, FetchStatus.ok())

    root = parse_html(decode_html(raw))

    title = ""
    for el in root.iter_elements():
        if el.tag == "title":
            title = _neutralize(el.text())
            break

    pieces: list[str] = []
    anchor_len = 0
    # (node, inside_anchor) — iterative walk in document order.
    stack: list[tuple[Element | TextNode, bool]] = [
        (child, False) for child in reversed(root.children)
    ]
    while stack:
        node, in_anchor = stack.pop()
        if isinstance(node, TextNode):
            piece = _neutralize(collapse_ws(node.text))
            if piece:
                pieces.append(piece)
                if in_anchor:
                    anchor_len += len(piece)
            continue
        if node.tag in _SKIP_TAGS:
            continue
        child_in_anchor = in_anchor or node.tag == "a"
        stack.extend((child, child_in_anchor) for child in reversed(node.children))

    body = " ".join(pieces)
    if title:
        body = f"{title} {body}" if body else title

    return PageContent(
        url=base_url,
        title=title,
        body_text=body,
        anchor_text_len=anchor_len,
        total_text_len=len(body),
        fetch_status=FetchStatus.ok(),
    )
