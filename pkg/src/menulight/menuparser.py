"""Crawl a two-level HTML menu repository and extract menu-item records.

Level 1 reads the index page and finds per-restaurant links; Level 2
reads each restaurant page, discovers how its nutrition table is laid
out by matching header text against a synonym table, then turns data
rows into records. Tables differ in column order and in which nutrient
columns exist at all, so the column map is rebuilt per table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Sequence
from urllib.parse import urldefrag, urljoin, urlparse

from .errors import FatalIngestError, FetchError, StorageError, TableRejectedError
from .fetch import Fetcher
from .htmldoc import HtmlTable, collapse_ws, parse_document
from .tld import NutritionFacts

# Column roles. Nutrient role names double as NutritionFacts field names.
FOOD_CATEGORY = "food_category"
ITEM_NAME = "item_name"
IGNORED = "ignored"
NUTRIENT_ROLES = (
    "calories",
    "total_fat",
    "saturated_fat",
    "dietary_fiber",
    "protein",
    "carbohydrates",
    "sodium",
)

# Normalized header text -> role. Headers are lowercased, whitespace-
# collapsed, and stripped of parenthesized units before lookup, so
# "Total Fat (g)" matches "total fat".
HEADER_SYNONYMS: dict[str, str] = {
    "menu item": ITEM_NAME,
    "item": ITEM_NAME,
    "food": ITEM_NAME,
    "food item": ITEM_NAME,
    "calories": "calories",
    "cal": "calories",
    "kcal": "calories",
    "total fat": "total_fat",
    "fat": "total_fat",
    "saturated fat": "saturated_fat",
    "sat fat": "saturated_fat",
    "sat. fat": "saturated_fat",
    "dietary fiber": "dietary_fiber",
    "fiber": "dietary_fiber",
    "fibre": "dietary_fiber",
    "protein": "protein",
    "carbohydrates": "carbohydrates",
    "carbs": "carbohydrates",
    "total carbohydrate": "carbohydrates",
    "sodium": "sodium",
    "food category": FOOD_CATEGORY,
    "category": FOOD_CATEGORY,
}

_PAREN_RE = re.compile(r"\([^)]*\)")

# A bare number with optional thousands separators, optional decimals,
# and an optional single trailing unit token ("5 g", "330mg", "70 kcal").
_NUMERIC_CELL_RE = re.compile(r"^(?P<number>\d[\d,]*(?:\.\d+)?)(?:\s*[A-Za-z%.]+)?$")


def normalize_header(text: str) -> str:
    return collapse_ws(_PAREN_RE.sub(" ", text)).lower()


def parse_number(text: str) -> float | None:
    """Tolerant numeric-cell parse; anything unparseable is absent, never zero."""
    cleaned = collapse_ws(text)
    match = _NUMERIC_CELL_RE.match(cleaned)
    if not match:
        return None
    value = float(match.group("number").replace(",", ""))
    if value != value or value in (float("inf"), float("-inf")):
        return None
    return value


@dataclass(frozen=True)
class ColumnMap:
    """Per-table assignment of zero-based column index to field role."""

    assignments: dict[int, str]

    def index_of(self, role: str) -> int | None:
        for index, assigned in self.assignments.items():
            if assigned == role:
                return index
        return None

    @property
    def item_name_index(self) -> int:
        index = self.index_of(ITEM_NAME)
        assert index is not None, "ColumnMap constructed without an item-name column"
        return index


def map_columns(header_cells: Sequence[str]) -> ColumnMap:
    """Match headers against the synonym table.

    Unrecognized headers map to ignored; a role already claimed by an
    earlier column is not assigned twice. Tables with no identifiable
    item-name column are rejected outright.
    """
    assignments: dict[int, str] = {}
    claimed: set[str] = set()
    for index, raw in enumerate(header_cells):
        role = HEADER_SYNONYMS.get(normalize_header(raw), IGNORED)
        if role in claimed:
            role = IGNORED
        assignments[index] = role
        if role != IGNORED:
            claimed.add(role)
    if ITEM_NAME not in claimed:
        raise TableRejectedError(
            f"no item-name column among headers {[collapse_ws(h) for h in header_cells]}"
        )
    return ColumnMap(assignments)


@dataclass(frozen=True)
class RawMenuRecord:
    restaurant_name: str
    food_category: str
    item_name: str
    facts: NutritionFacts

    def __post_init__(self):
        if not collapse_ws(self.item_name):
            raise ValueError("item_name must be non-empty")


@dataclass
class IngestFailure:
    locator: str
    reason: str


@dataclass
class IngestReport:
    restaurants_found: int = 0
    restaurants_parsed: int = 0
    items_extracted: int = 0
    rows_skipped: int = 0
    failures: list[IngestFailure] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "restaurants_found": self.restaurants_found,
            "restaurants_parsed": self.restaurants_parsed,
            "items_extracted": self.items_extracted,
            "rows_skipped": self.rows_skipped,
            "failures": [{"locator": f.locator, "reason": f.reason} for f in self.failures],
        }


def extract_restaurant_links(index_html: str, base: str) -> list[tuple[str, str]]:
    """Find restaurant links on the index page, resolved against `base`.

    A restaurant link is an anchor in the page's main content (the whole
    document when there is no <main>) whose resolved target shares the
    index's scheme and host and ends in an HTML page other than the index
    itself. Duplicates by resolved locator keep the first occurrence;
    document order is preserved.
    """
    doc = parse_document(index_html)
    base_clean, _ = urldefrag(base)
    base_parts = urlparse(base_clean)

    links: list[tuple[str, str]] = []
    seen: set[str] = set()
    for anchor in doc.anchors:
        if doc.has_main and not anchor.in_main:
            continue
        resolved, _ = urldefrag(urljoin(base_clean, anchor.href))
        parts = urlparse(resolved)
        if (parts.scheme, parts.netloc) != (base_parts.scheme, base_parts.netloc):
            continue
        if not parts.path.lower().endswith((".html", ".htm")):
            continue
        if resolved == base_clean:
            continue
        if not anchor.text or resolved in seen:
            continue
        seen.add(resolved)
        links.append((anchor.text, resolved))
    return links


def _extract_records(
    table: HtmlTable, column_map: ColumnMap, restaurant_name: str
) -> tuple[list[RawMenuRecord], int]:
    records: list[RawMenuRecord] = []
    skipped = 0
    last_category = ""
    header_seen = False

    for row in table.rows:
        if not header_seen:
            header_seen = row.header_texts() is not None
            continue
        if not row.is_data_row():
            continue  # section dividers and stray header rows
        cells = row.data_texts()

        def cell_text(role: str) -> str:
            index = column_map.index_of(role)
            if index is None or index >= len(cells):
                return ""
            return cells[index]

        category_cell = collapse_ws(cell_text(FOOD_CATEGORY))
        if category_cell:
            # Category rows span visual groups; remember it even when the
            # row itself carries no item.
            last_category = category_cell

        name = collapse_ws(cell_text(ITEM_NAME))
        if not name:
            skipped += 1
            continue

        nutrients = {role: parse_number(cell_text(role)) for role in NUTRIENT_ROLES}
        sat, total = nutrients["saturated_fat"], nutrients["total_fat"]
        if sat is not None and total is not None and sat > total:
            nutrients["saturated_fat"] = None  # contradicts total fat; treat as unparseable
        records.append(
            RawMenuRecord(restaurant_name, last_category, name, NutritionFacts(**nutrients))
        )
    return records, skipped


def parse_menu_page(restaurant_html: str, restaurant_name: str) -> tuple[list[RawMenuRecord], int]:
    """Parse the first table with a usable header; also count skipped rows.

    Rows whose item-name cell is empty are skipped and counted. Raises
    TableRejectedError when no table on the page yields a column map.
    """
    doc = parse_document(restaurant_html)
    for table in doc.tables:
        header_texts = None
        for row in table.rows:
            header_texts = row.header_texts()
            if header_texts is not None:
                break
        if header_texts is None:
            continue
        try:
            column_map = map_columns(header_texts)
        except TableRejectedError:
            continue  # try the next table
        return _extract_records(table, column_map, restaurant_name)
    raise TableRejectedError(f"no table with a usable header row for {restaurant_name!r}")


def parse_menu_table(restaurant_html: str, restaurant_name: str) -> list[RawMenuRecord]:
    """Menu-item records from the page, column order notwithstanding."""
    records, _ = parse_menu_page(restaurant_html, restaurant_name)
    return records


RecordSink = Callable[[str, list[RawMenuRecord]], object]


def ingest(root_locator: str, fetcher: Fetcher, sink: RecordSink) -> IngestReport:
    """Crawl index -> restaurant pages, handing each page's records to `sink`.

    One fetch per discovered locator. A failing restaurant page (fetch,
    parse, or storage) is recorded and does not abort the others; an
    unreachable root is fatal.
    """
    try:
        index_html = fetcher.fetch(root_locator)
    except FetchError as exc:
        raise FatalIngestError(f"ingest root unreachable: {exc}") from exc

    links = extract_restaurant_links(index_html, root_locator)
    report = IngestReport(restaurants_found=len(links))

    for restaurant_name, locator in links:
        try:
            page_html = fetcher.fetch(locator)
            records, skipped = parse_menu_page(page_html, restaurant_name)
            sink(restaurant_name, records)
        except (FetchError, TableRejectedError, StorageError) as exc:
            report.failures.append(IngestFailure(locator, str(exc)))
            continue
        report.restaurants_parsed += 1
        report.items_extracted += len(records)
        report.rows_skipped += skipped
    return report
