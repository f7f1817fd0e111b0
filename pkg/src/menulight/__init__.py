"""Menu ingestion, traffic-light labeling, and a nearby-restaurant menu API."""

from .errors import (
    AuthenticationError,
    FatalIngestError,
    FetchError,
    InvalidNutritionError,
    MenulightError,
    NotFoundError,
    SeedFileError,
    StorageError,
    TableRejectedError,
)
from .geo import DEFAULT_NEARBY_RADIUS_M, EARTH_RADIUS_M, GeoPoint, distance_meters, nearby
from .menuparser import (
    ColumnMap,
    IngestReport,
    RawMenuRecord,
    extract_restaurant_links,
    ingest,
    map_columns,
    parse_menu_table,
)
from .service import create_app
from .store import MenuItem, Restaurant, Store, Tip
from .tld import NutritionFacts, TrafficLightLabel, classify, order_menu

__version__ = "0.1.0"

__all__ = [
    "AuthenticationError",
    "ColumnMap",
    "DEFAULT_NEARBY_RADIUS_M",
    "EARTH_RADIUS_M",
    "FatalIngestError",
    "FetchError",
    "GeoPoint",
    "IngestReport",
    "InvalidNutritionError",
    "MenuItem",
    "MenulightError",
    "NotFoundError",
    "NutritionFacts",
    "RawMenuRecord",
    "Restaurant",
    "SeedFileError",
    "StorageError",
    "Store",
    "TableRejectedError",
    "Tip",
    "TrafficLightLabel",
    "classify",
    "create_app",
    "distance_meters",
    "extract_restaurant_links",
    "ingest",
    "map_columns",
    "nearby",
    "order_menu",
    "parse_menu_table",
]
