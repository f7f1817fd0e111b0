"""HTTP service: consumer JSON API plus the authenticated admin facade.

Both route families run in one process by default but can be built as
separate apps and bound to separate ports. Consumer endpoints are
read-only and tokenless; every admin action goes through one dispatch
entry point that validates the session token before looking at the
action, and never names internal operations in responses.
"""

from __future__ import annotations

import math
import threading
from pathlib import Path
from typing import Any, Callable

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import AuthenticationError, FatalIngestError, NotFoundError, SeedFileError
from .fetch import Fetcher, fetcher_for
from .geo import DEFAULT_NEARBY_RADIUS_M, GeoPoint, nearby
from .menuparser import IngestReport, ingest
from .seedfiles import parse_locations, parse_tips
from .store import MenuItem, Store
from .tld import TrafficLightLabel

# Machine-readable error codes (the documented fixed set).
CODE_MISSING_PARAMETER = "missing_parameter"
CODE_INVALID_PARAMETER = "invalid_parameter"
CODE_NOT_FOUND = "not_found"
CODE_UNAUTHORIZED = "unauthorized"
CODE_UNKNOWN_ACTION = "unknown_action"
CODE_INGEST_IN_PROGRESS = "ingest_in_progress"
CODE_INGEST_FAILED = "ingest_failed"
CODE_SEED_FAILED = "seed_failed"
CODE_INTERNAL = "internal_error"

ADMIN_ACTIONS = ("ingest", "seed_locations", "seed_tips", "list_failures")


class ApiError(Exception):
    """Carried to the JSON error handler: {code, message} at `status`."""

    def __init__(self, status: int, code: str, message: str):
        assert status in (400, 401, 404, 409, 500)
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class AdminState:
    """Shared admin-side state: the single-writer gate and the last report."""

    def __init__(self):
        self.write_gate = threading.Lock()
        self.last_report: IngestReport | None = None


def _install_error_handlers(app: FastAPI):
    @app.exception_handler(ApiError)
    def _api_error(request: Request, exc: ApiError):
        return JSONResponse({"code": exc.code, "message": exc.message}, status_code=exc.status)

    @app.exception_handler(RequestValidationError)
    def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            {"code": CODE_INVALID_PARAMETER, "message": "malformed request"}, status_code=400
        )


def _parse_float(raw: str | None, name: str) -> float:
    if raw is None:
        raise ApiError(400, CODE_MISSING_PARAMETER, f"query parameter {name!r} is required")
    try:
        value = float(raw)
    except ValueError:
        raise ApiError(400, CODE_INVALID_PARAMETER, f"query parameter {name!r} is not a number")
    if not math.isfinite(value):
        raise ApiError(400, CODE_INVALID_PARAMETER, f"query parameter {name!r} must be finite")
    return value


def _menu_row(item: MenuItem, full: bool) -> dict[str, Any]:
    row: dict[str, Any] = {
        "name": item.name,
        "category": item.food_category,
        "label": item.label.value,
        "calories": item.facts.calories,
        "total_fat": item.facts.total_fat,
        "saturated_fat": item.facts.saturated_fat,
    }
    if full:
        row.update(
            dietary_fiber=item.facts.dietary_fiber,
            protein=item.facts.protein,
            carbohydrates=item.facts.carbohydrates,
            sodium=item.facts.sodium,
        )
    return row


def add_consumer_routes(app: FastAPI, store: Store, default_radius: float):
    @app.get("/api/categories")
    def categories() -> list[str]:
        return store.list_categories()

    @app.get("/api/restaurants")
    def restaurants_by_category(category: str | None = None) -> list[dict[str, str]]:
        if category is None:
            raise ApiError(400, CODE_MISSING_PARAMETER, "query parameter 'category' is required")
        return [{"name": r.name} for r in store.restaurants_by_category(category)]

    @app.get("/api/restaurants/{name}/menu")
    def restaurant_menu(name: str, full: str | None = None) -> list[dict[str, Any]]:
        want_full = (full or "").lower() in ("true", "1", "yes")
        try:
            items = store.menu_for_restaurant(name)
        except NotFoundError:
            raise ApiError(404, CODE_NOT_FOUND, f"restaurant {name!r} not found")
        return [_menu_row(item, want_full) for item in items]

    @app.get("/api/nearby")
    def nearby_restaurants(
        lat: str | None = None, lon: str | None = None, radius: str | None = None
    ) -> list[dict[str, Any]]:
        try:
            user = GeoPoint(_parse_float(lat, "lat"), _parse_float(lon, "lon"))
        except ValueError as exc:
            raise ApiError(400, CODE_INVALID_PARAMETER, str(exc))
        radius_m = default_radius if radius is None else _parse_float(radius, "radius")
        if radius_m <= 0:
            raise ApiError(400, CODE_INVALID_PARAMETER, "radius must be positive")
        hits = nearby(user, store.all_locations(), radius_m)
        return [{"name": name, "distance_m": distance} for name, distance in hits]

    @app.get("/api/tips")
    def tips(category: str | None = None, label: str | None = None) -> list[dict[str, str]]:
        if label is None:
            raise ApiError(400, CODE_MISSING_PARAMETER, "query parameter 'label' is required")
        try:
            parsed = TrafficLightLabel.from_value(label)
        except ValueError:
            raise ApiError(400, CODE_INVALID_PARAMETER, f"unknown label {label!r}")
        return [{"text": tip.text} for tip in store.tips_for(category or "", parsed)]


def add_admin_routes(
    app: FastAPI,
    store: Store,
    state: AdminState,
    fetcher_factory: Callable[[str], Fetcher] = fetcher_for,
):
    @app.post("/admin/login")
    def login(body: dict = Body(...)) -> dict[str, str]:
        username = body.get("username")
        credential = body.get("credential")
        if not isinstance(username, str) or not isinstance(credential, str):
            raise ApiError(401, CODE_UNAUTHORIZED, "invalid credentials")
        try:
            token = store.verify_admin(username, credential)
        except AuthenticationError:
            raise ApiError(401, CODE_UNAUTHORIZED, "invalid credentials")
        return {"token": token}

    @app.post("/admin/dispatch")
    def dispatch(body: dict = Body(...)) -> Any:
        # Auth strictly precedes routing: a bad token gets the same 401
        # whether or not the action exists, and nothing is fetched or
        # written first.
        token = body.get("token")
        if not store.validate_token(token):
            raise ApiError(401, CODE_UNAUTHORIZED, "invalid or expired token")

        action = body.get("action")
        payload = body.get("payload") or {}
        if not isinstance(payload, dict):
            raise ApiError(400, CODE_INVALID_PARAMETER, "payload must be an object")

        if action == "ingest":
            return _run_ingest(payload)
        if action == "seed_locations":
            return _run_seed_locations(payload)
        if action == "seed_tips":
            return _run_seed_tips(payload)
        if action == "list_failures":
            report = state.last_report
            return {"failures": report.as_dict()["failures"] if report else []}
        raise ApiError(400, CODE_UNKNOWN_ACTION, "unknown or unsupported action")

    def _payload_text(payload: dict, key: str) -> str:
        value = payload.get(key)
        if not isinstance(value, str) or not value:
            raise ApiError(400, CODE_INVALID_PARAMETER, f"payload field {key!r} is required")
        return value

    def _run_ingest(payload: dict) -> dict:
        root = _payload_text(payload, "root")
        if not state.write_gate.acquire(blocking=False):
            raise ApiError(409, CODE_INGEST_IN_PROGRESS, "an ingest is already running")
        try:
            fetcher = fetcher_factory(root)
            report = ingest(root, fetcher, store.replace_restaurant_menu)
        except FatalIngestError as exc:
            raise ApiError(400, CODE_INGEST_FAILED, str(exc))
        finally:
            state.write_gate.release()
        state.last_report = report
        return report.as_dict()

    def _run_seed_locations(payload: dict) -> dict:
        text = _payload_text(payload, "text")
        try:
            entries = parse_locations(text)
        except SeedFileError as exc:
            raise ApiError(400, CODE_SEED_FAILED, str(exc))
        with state.write_gate:
            for name, points in entries:
                store.set_locations(name, points)
        return {"restaurants_seeded": len(entries)}

    def _run_seed_tips(payload: dict) -> dict:
        text = _payload_text(payload, "text")
        try:
            entries = parse_tips(text)
        except SeedFileError as exc:
            raise ApiError(400, CODE_SEED_FAILED, str(exc))
        with state.write_gate:
            for scope, label, tip_text in entries:
                store.upsert_tip(scope, label, tip_text)
        return {"tips_seeded": len(entries)}


def create_app(
    store: Store,
    *,
    default_radius: float = DEFAULT_NEARBY_RADIUS_M,
    fetcher_factory: Callable[[str], Fetcher] = fetcher_for,
    include_consumer: bool = True,
    include_admin: bool = True,
    admin_state: AdminState | None = None,
    webapp_dir: str | Path | None = None,
) -> FastAPI:
    """Build the service app.

    Pass include_consumer/include_admin to split the two route families
    across two processes or ports; give them the same AdminState when the
    admin family is split so the single-writer gate stays single.
    """
    app = FastAPI(title="menulight", docs_url=None, redoc_url=None, openapi_url=None)
    _install_error_handlers(app)
    if include_consumer:
        add_consumer_routes(app, store, default_radius)
    if include_admin:
        add_admin_routes(app, store, admin_state or AdminState(), fetcher_factory)
    if webapp_dir is not None:
        app.mount("/app", StaticFiles(directory=webapp_dir, html=True), name="webapp")
    return app
