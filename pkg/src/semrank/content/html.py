"""Error-tolerant HTML DOM with a small CSS-selector engine.

The standard library parser never raises on malformed markup, which is what
page purification needs; on top of it this module keeps just enough of a DOM
(elements, attributes, text nodes) to support text extraction and the
selector subset used by the per-engine extraction rules:

    tag, ``*``, ``.class``, ``#id``, ``[attr]``, ``[attr=value]``,
    descendant combinator (space), child combinator (``>``) and
    comma-separated alternatives.

All traversals are iterative; parsing a pathologically nested document must
not hit the interpreter recursion limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

VOID_ELEMENTS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

# HTML lets these omit their end tag; a new sibling implicitly closes the
# previous one.  Without this rule, SERP markup full of bare <li>/<p> tags
# would nest into one deep chain.
_IMPLICIT_CLOSERS: dict[str, frozenset[str]] = {
    "li": frozenset({"li"}),
    "option": frozenset({"option", "optgroup"}),
    "tr": frozenset({"tr"}),
    "td": frozenset({"td", "th", "tr"}),
    "th": frozenset({"td", "th", "tr"}),
    "dt": frozenset({"dt", "dd"}),
    "dd": frozenset({"dt", "dd"}),
    "p": frozenset({
        "p", "div", "ul", "ol", "dl", "li", "table", "section", "article",
        "aside", "header", "footer", "nav", "blockquote", "pre", "form",
        "h1", "h2", "h3", "h4", "h5", "h6",
    }),
}

_WS_RE = re.compile(r"\s+")


def collapse_ws(text: str) -> str:
    """Collapse whitespace runs to single spaces and strip the ends."""
    return _WS_RE.sub(" ", text).strip()


class TextNode:
    __slots__ = ("text", "parent")

    def __init__(self, text: str, parent: "Element | None" = None):
        self.text = text
        self.parent = parent


class Element:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict[str, str] | None = None,
                 parent: "Element | None" = None):
        self.tag = tag
        self.attrs = attrs or {}
        self.children: list[Element | TextNode] = []
        self.parent = parent

    def __repr__(self):
        return f"<Element {self.tag} attrs={self.attrs}>"

    @property
    def classes(self) -> list[str]:
        return self.attrs.get("class", "").split()

    def get(self, name: str, default: str | None = None) -> str | None:
        return self.attrs.get(name, default)

    def iter_elements(self):
        """All descendant elements in document order, self excluded."""
        stack = [c for c in reversed(self.children) if isinstance(c, Element)]
        while stack:
            el = stack.pop()
            yield el
            stack.extend(c for c in reversed(el.children) if isinstance(c, Element))

    def text(self) -> str:
        """Whitespace-normalized text of the subtree, script/style skipped."""
        pieces: list[str] = []
        stack: list[Element | TextNode] = list(reversed(self.children))
        while stack:
            node = stack.pop()
            if isinstance(node, TextNode):
                piece = collapse_ws(node.text)
                if piece:
                    pieces.append(piece)
            elif node.tag not in ("script", "style"):
                stack.extend(reversed(node.children))
        return " ".join(pieces)


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Element("#document")
        self._stack = [self.root]

    def handle_starttag(self, tag, attrs):
        while (
            len(self._stack) > 1
            and tag in _IMPLICIT_CLOSERS.get(self._stack[-1].tag, ())
        ):
            self._stack.pop()
        attr_map: dict[str, str] = {}
        for name, value in attrs:
            attr_map.setdefault(name, value if value is not None else "")
        el = Element(tag, attr_map, parent=self._stack[-1])
        self._stack[-1].children.append(el)
        if tag not in VOID_ELEMENTS:
            self._stack.append(el)

    def handle_startendtag(self, tag, attrs):
        attr_map: dict[str, str] = {}
        for name, value in attrs:
            attr_map.setdefault(name, value if value is not None else "")
        el = Element(tag, attr_map, parent=self._stack[-1])
        self._stack[-1].children.append(el)

    def handle_endtag(self, tag):
        # Tolerant close: pop to the nearest matching open element, ignore
        # stray end tags entirely.
        for i in range(len(self._stack) - 1, 0, -1):
            if self._stack[i].tag == tag:
                del self._stack[i:]
                return

    def handle_data(self, data):
        if data:
            self._stack[-1].children.append(TextNode(data, parent=self._stack[-1]))

    # Comments, doctypes, processing instructions carry no content text.
    def handle_comment(self, data):
        pass

    def handle_decl(self, decl):
        pass

    def unknown_decl(self, data):
        pass

    def handle_pi(self, data):
        pass


def parse_html(text: str) -> Element:
    """Parse HTML text into a DOM tree rooted at a synthetic #document."""
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    return builder.root


# --- CSS selector subset -------------------------------------------------

@dataclass(frozen=True)
class _Compound:
    tag: str | None = None
    id: str | None = None
    classes: tuple[str, ...] = ()
    attrs: tuple[tuple[str, str | None], ...] = ()  # (name, required value or None)


_SIMPLE_RE = re.compile(
    r"""
      (?P<tag>\*|[a-zA-Z][\w-]*)
    | \.(?P<cls>[\w-]+)
    | \#(?P<id>[\w-]+)
    | \[\s*(?P<aname>[\w-]+)\s*(?:=\s*(?P<aval>"[^"]*"|'[^']*'|[^\]\s]+)\s*)?\]
    """,
    re.VERBOSE,
)


class SelectorError(ValueError):
    pass


def _parse_compound(text: str) -> _Compound:
    tag = None
    id_ = None
    classes: list[str] = []
    attrs: list[tuple[str, str | None]] = []
    pos = 0
    while pos < len(text):
        m = _SIMPLE_RE.match(text, pos)
        if m is None:
            raise SelectorError(f"unsupported selector syntax at {text[pos:]!r}")
        if m.group("tag"):
            tag = None if m.group("tag") == "*" else m.group("tag").lower()
        elif m.group("cls"):
            classes.append(m.group("cls"))
        elif m.group("id"):
            id_ = m.group("id")
        else:
            value = m.group("aval")
            if value is not None and value[0] in "\"'":
                value = value[1:-1]
            attrs.append((m.group("aname").lower(), value))
        pos = m.end()
    return _Compound(tag=tag, id=id_, classes=tuple(classes), attrs=tuple(attrs))


def _parse_selector(selector: str) -> list[list[tuple[str, _Compound]]]:
    """Parse a selector list into [(combinator, compound), ...] chains.

    The first compound of each chain carries the ``" "`` combinator, meaning
    "anywhere under the root".
    """
    chains = []
    for alternative in selector.split(","):
        alternative = alternative.strip()
        if not alternative:
            raise SelectorError("empty selector")
        # normalize child combinators so tokens split cleanly on whitespace
        tokens = alternative.replace(">", " > ").split()
        chain: list[tuple[str, _Compound]] = []
        combinator = " "
        for token in tokens:
            if token == ">":
                if not chain:
                    raise SelectorError(f"selector cannot start with '>': {selector!r}")
                combinator = ">"
                continue
            chain.append((combinator, _parse_compound(token)))
            combinator = " "
        if combinator == ">":
            raise SelectorError(f"dangling '>' in selector: {selector!r}")
        if not chain:
            raise SelectorError(f"empty selector in list: {selector!r}")
        chains.append(chain)
    return chains


def _matches_compound(el: Element, comp: _Compound) -> bool:
    if comp.tag is not None and el.tag != comp.tag:
        return False
    if comp.id is not None and el.attrs.get("id") != comp.id:
        return False
    if comp.classes:
        have = set(el.classes)
        if not all(c in have for c in comp.classes):
            return False
    for name, value in comp.attrs:
        if name not in el.attrs:
            return False
        if value is not None and el.attrs[name] != value:
            return False
    return True


def _is_real_element(node) -> bool:
    return isinstance(node, Element) and node.tag != "#document"


def _matches_chain(el: Element, chain: list[tuple[str, _Compound]]) -> bool:
    # Right-to-left matching with backtracking over descendant combinators.
    # chain[i][0] is the combinator between compound i-1 and compound i;
    # chain[0][0] is always " " (anywhere under the root).
    def match_at(i: int, node) -> bool:
        if not _is_real_element(node) or not _matches_compound(node, chain[i][1]):
            return False
        if i == 0:
            return True
        if chain[i][0] == ">":
            return match_at(i - 1, node.parent)
        ancestor = node.parent
        while _is_real_element(ancestor):
            if match_at(i - 1, ancestor):
                return True
            ancestor = ancestor.parent
        return False

    return match_at(len(chain) - 1, el)


def select(root: Element, selector: str) -> list[Element]:
    """All elements under ``root`` matching the selector, in document order."""
    chains = _parse_selector(selector)
    matched: list[Element] = []
    seen: set[int] = set()
    for el in root.iter_elements():
        for chain in chains:
            if _matches_chain(el, chain) and id(el) not in seen:
                matched.append(el)
                seen.add(id(el))
                break
    return matched


def select_one(root: Element, selector: str) -> Element | None:
    found = select(root, selector)
    return found[0] if found else None
