"""Embedded sqlite datastore: the single source of truth behind both
route families.

One connection guarded by a re-entrant lock; menu replacement runs in a
transaction so readers only ever see the old menu or the new one. Admin
sessions are in-process (opaque random tokens with idle expiry) and do
not survive a restart.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
import sqlite3
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import AuthenticationError, NotFoundError, StorageError
from .geo import GeoPoint
from .menuparser import RawMenuRecord
from .tld import NutritionFacts, TrafficLightLabel, classify, order_menu

DEFAULT_SESSION_TTL_SECONDS = 30 * 60.0

_PBKDF2_ITERATIONS = 60_000

_SCHEMA = """
PRAGMA foreign_keys = ON;
CREATE TABLE IF NOT EXISTS restaurants (
    id INTEGER PRIMARY KEY,
    name TEXT NOT NULL UNIQUE COLLATE NOCASE CHECK (length(name) > 0)
);
CREATE TABLE IF NOT EXISTS locations (
    id INTEGER PRIMARY KEY,
    restaurant_id INTEGER NOT NULL REFERENCES restaurants(id) ON DELETE CASCADE,
    latitude REAL NOT NULL,
    longitude REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS menu_items (
    id INTEGER PRIMARY KEY,
    restaurant_id INTEGER NOT NULL REFERENCES restaurants(id) ON DELETE CASCADE,
    food_category TEXT NOT NULL,
    name TEXT NOT NULL,
    calories REAL,
    total_fat REAL,
    saturated_fat REAL,
    dietary_fiber REAL,
    protein REAL,
    carbohydrates REAL,
    sodium REAL,
    label TEXT NOT NULL,
    UNIQUE (restaurant_id, food_category, name)
);
CREATE TABLE IF NOT EXISTS tips (
    id INTEGER PRIMARY KEY,
    scope TEXT NOT NULL,
    label TEXT NOT NULL,
    tip_text TEXT NOT NULL CHECK (length(tip_text) > 0),
    UNIQUE (scope, label, tip_text)
);
CREATE TABLE IF NOT EXISTS admin_users (
    username TEXT PRIMARY KEY,
    credential_hash TEXT NOT NULL
);
"""


@dataclass
class Restaurant:
    id: int
    name: str
    locations: list[GeoPoint] = field(default_factory=list)


@dataclass
class MenuItem:
    id: int
    restaurant_id: int
    food_category: str
    name: str
    facts: NutritionFacts
    label: TrafficLightLabel


@dataclass
class Tip:
    id: int
    scope: str
    label: TrafficLightLabel
    text: str


def _hash_credential(credential: str, salt: bytes, iterations: int = _PBKDF2_ITERATIONS) -> str:
    digest = hashlib.pbkdf2_hmac("sha256", credential.encode("utf-8"), salt, iterations)
    return f"pbkdf2_sha256${iterations}${salt.hex()}${digest.hex()}"


def _verify_credential(credential: str, stored: str) -> bool:
    try:
        algorithm, iterations, salt_hex, digest_hex = stored.split("$")
        if algorithm != "pbkdf2_sha256":
            return False
        recomputed = hashlib.pbkdf2_hmac(
            "sha256", credential.encode("utf-8"), bytes.fromhex(salt_hex), int(iterations)
        )
        return hmac.compare_digest(recomputed.hex(), digest_hex)
    except (ValueError, AttributeError):
        return False


# Burned against unknown usernames so lookups cost the same either way.
_DUMMY_HASH = _hash_credential("placeholder", b"\x00" * 16)


class Store:
    """All persistent state: restaurants, menus, locations, tips, admins."""

    def __init__(self, path: str | Path, session_ttl_seconds: float = DEFAULT_SESSION_TTL_SECONDS):
        self.path = Path(path)
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(self.path, check_same_thread=False, isolation_level=None)
        self._conn.row_factory = sqlite3.Row
        self._conn.executescript(_SCHEMA)
        self._session_ttl = session_ttl_seconds
        self._sessions: dict[str, float] = {}

    def close(self):
        self._conn.close()

    def __enter__(self) -> "Store":
        return self

    def __exit__(self, *exc_info):
        self.close()

    # -- restaurants and menus --

    def _find_restaurant_row(self, name: str) -> sqlite3.Row | None:
        return self._conn.execute(
            "SELECT id, name FROM restaurants WHERE name = ? COLLATE NOCASE", (name,)
        ).fetchone()

    def _restaurant_locations(self, restaurant_id: int) -> list[GeoPoint]:
        rows = self._conn.execute(
            "SELECT latitude, longitude FROM locations WHERE restaurant_id = ? ORDER BY id",
            (restaurant_id,),
        ).fetchall()
        return [GeoPoint(row["latitude"], row["longitude"]) for row in rows]

    def _restaurant_from_row(self, row: sqlite3.Row) -> Restaurant:
        return Restaurant(row["id"], row["name"], self._restaurant_locations(row["id"]))

    def restaurants(self) -> list[Restaurant]:
        with self._lock:
            rows = self._conn.execute("SELECT id, name FROM restaurants ORDER BY name").fetchall()
            return [self._restaurant_from_row(row) for row in rows]

    def replace_restaurant_menu(
        self, restaurant_name: str, records: Sequence[RawMenuRecord]
    ) -> Restaurant:
        """Create-or-find the restaurant and swap in a new menu atomically.

        Labels are computed from total fat at write time. Any failure
        rolls the transaction back, leaving the previous menu intact.
        """
        for record in records:
            if record.restaurant_name != restaurant_name:
                raise ValueError(
                    f"record for {record.restaurant_name!r} handed to {restaurant_name!r}"
                )
        with self._lock:
            try:
                self._conn.execute("BEGIN IMMEDIATE")
                row = self._find_restaurant_row(restaurant_name)
                if row is None:
                    cursor = self._conn.execute(
                        "INSERT INTO restaurants (name) VALUES (?)", (restaurant_name,)
                    )
                    restaurant_id = cursor.lastrowid
                else:
                    restaurant_id = row["id"]
                self._conn.execute(
                    "DELETE FROM menu_items WHERE restaurant_id = ?", (restaurant_id,)
                )
                for record in records:
                    facts = record.facts
                    self._conn.execute(
                        "INSERT INTO menu_items (restaurant_id, food_category, name,"
                        " calories, total_fat, saturated_fat, dietary_fiber, protein,"
                        " carbohydrates, sodium, label)"
                        " VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
                        (
                            restaurant_id,
                            record.food_category,
                            record.item_name,
                            facts.calories,
                            facts.total_fat,
                            facts.saturated_fat,
                            facts.dietary_fiber,
                            facts.protein,
                            facts.carbohydrates,
                            facts.sodium,
                            classify(facts.total_fat).value,
                        ),
                    )
                self._conn.execute("COMMIT")
            except sqlite3.Error as exc:
                self._conn.execute("ROLLBACK")
                raise StorageError(f"menu replacement for {restaurant_name!r} failed: {exc}") from exc
            row = self._find_restaurant_row(restaurant_name)
            assert row is not None
            return self._restaurant_from_row(row)

    def list_categories(self) -> list[str]:
        """Distinct non-empty category names, case-insensitively deduped,
        sorted ascending (representative spelling = lexicographically least)."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT MIN(food_category) AS name FROM menu_items"
                " WHERE food_category <> '' GROUP BY lower(food_category) ORDER BY 1"
            ).fetchall()
            return [row["name"] for row in rows]

    def restaurants_by_category(self, category: str) -> list[Restaurant]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT DISTINCT r.id, r.name FROM restaurants r"
                " JOIN menu_items i ON i.restaurant_id = r.id"
                " WHERE lower(i.food_category) = lower(?) ORDER BY r.name",
                (category,),
            ).fetchall()
            return [self._restaurant_from_row(row) for row in rows]

    def menu_for_restaurant(self, restaurant: str | int) -> list[MenuItem]:
        """All items for the restaurant, healthiest label first."""
        with self._lock:
            if isinstance(restaurant, int):
                row = self._conn.execute(
                    "SELECT id, name FROM restaurants WHERE id = ?", (restaurant,)
                ).fetchone()
            else:
                row = self._find_restaurant_row(restaurant)
            if row is None:
                raise NotFoundError(f"unknown restaurant: {restaurant!r}")
            item_rows = self._conn.execute(
                "SELECT * FROM menu_items WHERE restaurant_id = ?", (row["id"],)
            ).fetchall()
            items = [
                MenuItem(
                    id=item["id"],
                    restaurant_id=item["restaurant_id"],
                    food_category=item["food_category"],
                    name=item["name"],
                    facts=NutritionFacts(
                        calories=item["calories"],
                        total_fat=item["total_fat"],
                        saturated_fat=item["saturated_fat"],
                        dietary_fiber=item["dietary_fiber"],
                        protein=item["protein"],
                        carbohydrates=item["carbohydrates"],
                        sodium=item["sodium"],
                    ),
                    label=TrafficLightLabel(item["label"]),
                )
                for item in item_rows
            ]
            return order_menu(items)

    def audit_labels(self) -> list[int]:
        """Item ids whose stored label disagrees with the fat rule."""
        with self._lock:
            rows = self._conn.execute("SELECT id, total_fat, label FROM menu_items").fetchall()
            return [
                row["id"] for row in rows if classify(row["total_fat"]).value != row["label"]
            ]

    # -- locations --

    def set_locations(self, restaurant_name: str, points: Iterable[GeoPoint]) -> Restaurant:
        """Create-or-find the restaurant and replace its coordinates."""
        points = list(points)
        with self._lock:
            try:
                self._conn.execute("BEGIN IMMEDIATE")
                row = self._find_restaurant_row(restaurant_name)
                if row is None:
                    cursor = self._conn.execute(
                        "INSERT INTO restaurants (name) VALUES (?)", (restaurant_name,)
                    )
                    restaurant_id = cursor.lastrowid
                else:
                    restaurant_id = row["id"]
                self._conn.execute("DELETE FROM locations WHERE restaurant_id = ?", (restaurant_id,))
                for point in points:
                    self._conn.execute(
                        "INSERT INTO locations (restaurant_id, latitude, longitude) VALUES (?, ?, ?)",
                        (restaurant_id, point.latitude, point.longitude),
                    )
                self._conn.execute("COMMIT")
            except sqlite3.Error as exc:
                self._conn.execute("ROLLBACK")
                raise StorageError(f"location update for {restaurant_name!r} failed: {exc}") from exc
            row = self._find_restaurant_row(restaurant_name)
            assert row is not None
            return self._restaurant_from_row(row)

    def all_locations(self) -> list[tuple[str, GeoPoint]]:
        """(restaurant name, location) pairs across the whole store."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT r.name AS name, l.latitude AS lat, l.longitude AS lon"
                " FROM locations l JOIN restaurants r ON r.id = l.restaurant_id ORDER BY l.id"
            ).fetchall()
            return [(row["name"], GeoPoint(row["lat"], row["lon"])) for row in rows]

    # -- tips --

    def upsert_tip(self, scope: str, label: TrafficLightLabel, text: str) -> Tip:
        if not text.strip():
            raise ValueError("tip text must be non-empty")
        with self._lock:
            self._conn.execute(
                "INSERT OR IGNORE INTO tips (scope, label, tip_text) VALUES (?, ?, ?)",
                (scope, label.value, text),
            )
            row = self._conn.execute(
                "SELECT * FROM tips WHERE scope = ? AND label = ? AND tip_text = ?",
                (scope, label.value, text),
            ).fetchone()
            return Tip(row["id"], row["scope"], TrafficLightLabel(row["label"]), row["tip_text"])

    def tips_for(self, category: str, label: TrafficLightLabel) -> list[Tip]:
        """Tips scoped to the category (case-insensitive) or global ('*')."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM tips WHERE label = ? AND (scope = '*' OR lower(scope) = lower(?))"
                " ORDER BY id",
                (label.value, category),
            ).fetchall()
            return [
                Tip(row["id"], row["scope"], TrafficLightLabel(row["label"]), row["tip_text"])
                for row in rows
            ]

    # -- admin credentials and sessions --

    def add_admin(self, username: str, credential: str):
        if not username or not credential:
            raise ValueError("username and credential must be non-empty")
        salt = secrets.token_bytes(16)
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO admin_users (username, credential_hash) VALUES (?, ?)",
                (username, _hash_credential(credential, salt)),
            )

    def verify_admin(self, username: str, credential: str) -> str:
        """Verify credentials and mint a session token.

        Unknown user and wrong credential take the same code path and
        raise the same error, so callers learn nothing either way.
        """
        with self._lock:
            row = self._conn.execute(
                "SELECT credential_hash FROM admin_users WHERE username = ?", (username,)
            ).fetchone()
        stored = row["credential_hash"] if row is not None else _DUMMY_HASH
        ok = _verify_credential(credential, stored) and row is not None
        if not ok:
            raise AuthenticationError("invalid credentials")
        token = secrets.token_hex(16)
        with self._lock:
            self._sessions[token] = time.monotonic()
        return token

    def validate_token(self, token: str) -> bool:
        """True when the token exists and has not sat idle past its TTL.
        Valid use refreshes the idle timer."""
        if not isinstance(token, str):
            return False
        with self._lock:
            issued = self._sessions.get(token)
            if issued is None:
                return False
            now = time.monotonic()
            if now - issued > self._session_ttl:
                del self._sessions[token]
                return False
            self._sessions[token] = now
            return True
