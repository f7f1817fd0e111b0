"""Minimal HTML document model built on the stdlib parser.

Extracts exactly what menu pages need: tables as rows of header/data
cells, and anchors with their link text. Tolerates implied end tags for
rows and cells but does not execute scripts or resolve CSS.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser


def collapse_ws(text: str) -> str:
    """Trim and collapse runs of whitespace to single spaces."""
    return " ".join(text.split())


@dataclass
class TableCell:
    tag: str  # "th" or "td"
    text: str


@dataclass
class TableRow:
    cells: list[TableCell] = field(default_factory=list)

    def header_texts(self) -> list[str] | None:
        """Cell texts if this row is header-tagged, else None."""
        if self.cells and all(cell.tag == "th" for cell in self.cells):
            return [cell.text for cell in self.cells]
        return None

    def is_data_row(self) -> bool:
        return bool(self.cells) and all(cell.tag == "td" for cell in self.cells)

    def data_texts(self) -> list[str]:
        return [cell.text for cell in self.cells]


@dataclass
class HtmlTable:
    rows: list[TableRow] = field(default_factory=list)


@dataclass
class Anchor:
    href: str
    text: str
    in_main: bool


@dataclass
class HtmlDocument:
    tables: list[HtmlTable] = field(default_factory=list)
    anchors: list[Anchor] = field(default_factory=list)
    has_main: bool = False


class _DocumentParser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.doc = HtmlDocument()
        self._tables: list[HtmlTable] = []  # stack, innermost last
        self._row: TableRow | None = None
        self._cell_tag: str | None = None
        self._cell_parts: list[str] = []
        self._anchor_href: str | None = None
        self._anchor_in_main = False
        self._anchor_parts: list[str] = []
        self._main_depth = 0

    # -- cell/row bookkeeping with implied end tags --

    def _close_cell(self):
        if self._cell_tag is not None and self._row is not None:
            self._row.cells.append(
                TableCell(self._cell_tag, collapse_ws("".join(self._cell_parts)))
            )
        self._cell_tag = None
        self._cell_parts = []

    def _close_row(self):
        self._close_cell()
        self._row = None

    def _close_anchor(self):
        if self._anchor_href is not None:
            self.doc.anchors.append(
                Anchor(self._anchor_href, collapse_ws("".join(self._anchor_parts)), self._anchor_in_main)
            )
        self._anchor_href = None
        self._anchor_parts = []

    def handle_starttag(self, tag, attrs):
        if tag == "main":
            self._main_depth += 1
            self.doc.has_main = True
        elif tag == "table":
            self._close_row()
            table = HtmlTable()
            self._tables.append(table)
            self.doc.tables.append(table)
        elif tag == "tr":
            self._close_row()
            if self._tables:
                self._row = TableRow()
                self._tables[-1].rows.append(self._row)
        elif tag in ("td", "th"):
            self._close_cell()
            if self._row is not None:
                self._cell_tag = tag
        elif tag == "a":
            self._close_anchor()
            href = next((value for name, value in attrs if name == "href"), None)
            if href is not None:
                self._anchor_href = href
                self._anchor_in_main = self._main_depth > 0
        elif tag == "br":
            self.handle_data(" ")

    def handle_endtag(self, tag):
        if tag == "main":
            self._main_depth = max(0, self._main_depth - 1)
        elif tag == "table":
            self._close_row()
            if self._tables:
                self._tables.pop()
        elif tag == "tr":
            self._close_row()
        elif tag in ("td", "th"):
            self._close_cell()
        elif tag == "a":
            self._close_anchor()

    def handle_data(self, data):
        if self._cell_tag is not None:
            self._cell_parts.append(data)
        if self._anchor_href is not None:
            self._anchor_parts.append(data)

    def close(self):
        super().close()
        self._close_row()
        self._close_anchor()


def parse_document(html: str) -> HtmlDocument:
    """Parse HTML text into tables and anchors."""
    parser = _DocumentParser()
    parser.feed(html)
    parser.close()
    return parser.doc
