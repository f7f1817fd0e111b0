"""Text seed-file formats for restaurant locations and tips.

Both are line-oriented, pipe-delimited, UTF-8. Blank lines and lines
starting with '#' are ignored. Parse errors cite the 1-based line number.

Locations, one restaurant per line (coordinates optional):

    Burger Hut | 32.2319,-110.9501 ; 32.2400,-110.9400

Tips, one per line; scope is a food category or '*' for global:

    * | red | Swap the fries for a side salad.
"""

from __future__ import annotations

from .errors import SeedFileError
from .geo import GeoPoint
from .htmldoc import collapse_ws
from .tld import TrafficLightLabel


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def parse_locations(text: str) -> list[tuple[str, list[GeoPoint]]]:
    entries: list[tuple[str, list[GeoPoint]]] = []
    for number, line in _content_lines(text):
        name, sep, coord_part = line.partition("|")
        name = collapse_ws(name)
        if not sep:
            raise SeedFileError(number, "expected 'Name | lat,lon ; lat,lon ...'")
        if not name:
            raise SeedFileError(number, "restaurant name is empty")
        points: list[GeoPoint] = []
        for chunk in coord_part.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            lat_text, comma, lon_text = chunk.partition(",")
            if not comma:
                raise SeedFileError(number, f"coordinate {chunk!r} is not 'lat,lon'")
            try:
                points.append(GeoPoint(float(lat_text), float(lon_text)))
            except ValueError as exc:
                raise SeedFileError(number, f"bad coordinate {chunk!r}: {exc}") from exc
        entries.append((name, points))
    return entries


def parse_tips(text: str) -> list[tuple[str, TrafficLightLabel, str]]:
    entries: list[tuple[str, TrafficLightLabel, str]] = []
    for number, line in _content_lines(text):
        parts = line.split("|", 2)
        if len(parts) != 3:
            raise SeedFileError(number, "expected 'scope | label | tip text'")
        scope = collapse_ws(parts[0])
        if not scope:
            raise SeedFileError(number, "scope is empty (use '*' for global)")
        try:
            label = TrafficLightLabel.from_value(parts[1].strip())
        except ValueError as exc:
            raise SeedFileError(number, str(exc)) from exc
        tip_text = parts[2].strip()
        if not tip_text:
            raise SeedFileError(number, "tip text is empty")
        entries.append((scope, label, tip_text))
    return entries
