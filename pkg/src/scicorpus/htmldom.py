"""Lenient HTML document tree for repository pages.

Institutional repository HTML is frequently malformed (unclosed tags,
stray end tags, unquoted attributes), so this parser never raises on
structure: unmatched end tags are ignored, unclosed elements are closed
implicitly, and void elements never take children. The tree exposes
just what metadata extraction needs: tags, attributes, descendant
text, ancestor language attributes, and document-order traversal.
"""

from __future__ import annotations

from html.parser import HTMLParser

VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta source track wbr".split()
)
_SKIP_TEXT_TAGS = frozenset(("script", "style"))


class Element:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict[str, str], parent: "Element | None"):
        self.tag = tag
        self.attrs = attrs
        self.children: list[Element | str] = []
        self.parent = parent

    def __repr__(self):
        return f"<Element {self.tag} {self.attrs}>"

    def text(self) -> str:
        """Whitespace-normalized descendant text, skipping script/style."""
        parts: list[str] = []
        self._collect_text(parts)
        return " ".join(" ".join(parts).split())

    def _collect_text(self, parts: list[str]) -> None:
        if self.tag in _SKIP_TEXT_TAGS:
            return
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            else:
                child._collect_text(parts)

    def iter(self):
        """All elements of the subtree in document order, self first."""
        yield self
        for child in self.children:
            if isinstance(child, Element):
                yield from child.iter()

    def child_elements(self) -> list["Element"]:
        return [child for child in self.children if isinstance(child, Element)]

    def next_sibling(self) -> "Element | None":
        if self.parent is None:
            return None
        siblings = self.parent.child_elements()
        index = siblings.index(self)
        return siblings[index + 1] if index + 1 < len(siblings) else None

    def language(self) -> str | None:
        """Nearest lang or xml:lang attribute on self or an ancestor."""
        node: Element | None = self
        while node is not None:
            value = node.attrs.get("lang") or node.attrs.get("xml:lang")
            if value:
                return value
            node = node.parent
        return None


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Element("#document", {}, None)
        self.stack = [self.root]

    def handle_starttag(self, tag, attrs):
        attr_map: dict[str, str] = {}
        for name, value in attrs:
            attr_map.setdefault(name, value if value is not None else "")
        element = Element(tag, attr_map, self.stack[-1])
        self.stack[-1].children.append(element)
        if tag not in VOID_ELEMENTS:
            self.stack.append(element)

    def handle_startendtag(self, tag, attrs):
        self.handle_starttag(tag, attrs)
        if tag not in VOID_ELEMENTS:
            self.stack.pop()

    def handle_endtag(self, tag):
        # Close up to the nearest matching open element; ignore strays.
        for depth in range(len(self.stack) - 1, 0, -1):
            if self.stack[depth].tag == tag:
                del self.stack[depth:]
                return

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def parse_html(text: str) -> Element:
    """Parse HTML text into a document tree; never raises on structure."""
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    return builder.root
