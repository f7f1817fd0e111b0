"""Operator command line: run the service, ingest menus, seed data.

Exit codes are stable for scripting: 0 success, 1 fatal ingest/seed/
startup error, 2 usage error (click's default).
"""

from __future__ import annotations

import socket
import sys
import threading
from pathlib import Path

import click
import uvicorn

from .errors import FatalIngestError, SeedFileError
from .fetch import fetcher_for
from .geo import DEFAULT_NEARBY_RADIUS_M
from .menuparser import IngestReport, ingest as run_ingest
from .seedfiles import parse_locations, parse_tips
from .service import AdminState, create_app
from .store import DEFAULT_SESSION_TTL_SECONDS, Store


def _parse_bind(bind: str) -> tuple[str, int]:
    host, sep, port_text = bind.rpartition(":")
    if not sep or not host:
        raise click.UsageError(f"--bind must be HOST:PORT, got {bind!r}")
    try:
        return host, int(port_text)
    except ValueError:
        raise click.UsageError(f"--bind port is not a number: {port_text!r}")


def _check_port_free(host: str, port: int):
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise click.ClickException(f"cannot bind {host}:{port}: {exc.strerror or exc}")
    finally:
        probe.close()


def _format_report(report: IngestReport) -> str:
    lines = [
        "Ingest report",
        f"  restaurants found:  {report.restaurants_found}",
        f"  restaurants parsed: {report.restaurants_parsed}",
        f"  items extracted:    {report.items_extracted}",
        f"  rows skipped:       {report.rows_skipped}",
    ]
    if report.failures:
        lines.append("  failures:")
        for failure in report.failures:
            lines.append(f"    {failure.locator}: {failure.reason}")
    else:
        lines.append("  failures:           none")
    return "\n".join(lines)


@click.group()
@click.option(
    "--store",
    "store_path",
    envvar="MENULIGHT_STORE",
    default="menulight.db",
    show_default=True,
    help="Path of the embedded store file (env MENULIGHT_STORE).",
)
@click.pass_context
def cli(ctx, store_path: str):
    """Menu ingestion and traffic-light menu service."""
    ctx.obj = store_path


@cli.command()
@click.option(
    "--bind",
    envvar="MENULIGHT_BIND",
    default="127.0.0.1:8000",
    show_default=True,
    help="HOST:PORT for the service (env MENULIGHT_BIND).",
)
@click.option(
    "--admin-port",
    type=int,
    default=None,
    help="Serve the admin route family on this separate port.",
)
@click.option(
    "--default-radius",
    type=float,
    default=DEFAULT_NEARBY_RADIUS_M,
    show_default=True,
    help="Nearby-scan radius in meters when a request omits one.",
)
@click.option(
    "--session-ttl",
    type=float,
    default=DEFAULT_SESSION_TTL_SECONDS,
    show_default=True,
    help="Admin session idle expiry in seconds.",
)
@click.option(
    "--webapp",
    "webapp_dir",
    type=click.Path(exists=True, file_okay=False),
    default=None,
    help="Serve a built browser UI from this directory at /app.",
)
@click.pass_obj
def serve(store_path, bind, admin_port, default_radius, session_ttl, webapp_dir):
    """Run the HTTP service until terminated."""
    if default_radius <= 0:
        raise click.UsageError("--default-radius must be positive")
    host, port = _parse_bind(bind)
    _check_port_free(host, port)
    if admin_port is not None:
        _check_port_free(host, admin_port)

    store = Store(store_path, session_ttl_seconds=session_ttl)
    if admin_port is None:
        app = create_app(store, default_radius=default_radius, webapp_dir=webapp_dir)
        uvicorn.run(app, host=host, port=port, log_level="warning")
        return

    # Two-port mode: one process, the route families bound separately.
    state = AdminState()
    consumer = create_app(
        store, default_radius=default_radius, include_admin=False, webapp_dir=webapp_dir
    )
    admin = create_app(store, include_consumer=False, admin_state=state)
    servers = [
        uvicorn.Server(uvicorn.Config(consumer, host=host, port=port, log_level="warning")),
        uvicorn.Server(uvicorn.Config(admin, host=host, port=admin_port, log_level="warning")),
    ]
    threads = [threading.Thread(target=server.run, daemon=True) for server in servers]
    for thread in threads:
        thread.start()
    click.echo(f"consumer API on {host}:{port}, admin facade on {host}:{admin_port}")
    try:
        for thread in threads:
            thread.join()
    except KeyboardInterrupt:
        for server in servers:
            server.should_exit = True


@cli.command()
@click.option("--root", required=True, help="Index page of the menu repository (URL or path).")
@click.pass_obj
def ingest(store_path, root):
    """Crawl a menu repository and replace the stored menus."""
    with Store(store_path) as store:
        try:
            report = run_ingest(root, fetcher_for(root), store.replace_restaurant_menu)
        except FatalIngestError as exc:
            click.echo(f"ERROR: {exc}", err=True)
            sys.exit(1)
        click.echo(_format_report(report))


@cli.command()
@click.option(
    "--locations",
    "locations_file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Locations seed file (Name | lat,lon ; ...).",
)
@click.option(
    "--tips",
    "tips_file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Tips seed file (scope | label | text).",
)
@click.pass_obj
def seed(store_path, locations_file, tips_file):
    """Load locations and/or tips from seed files."""
    if locations_file is None and tips_file is None:
        raise click.UsageError("give --locations and/or --tips")
    with Store(store_path) as store:
        if locations_file is not None:
            text = Path(locations_file).read_text(encoding="utf-8")
            try:
                entries = parse_locations(text)
            except SeedFileError as exc:
                click.echo(f"ERROR: {locations_file}: {exc}", err=True)
                sys.exit(1)
            for name, points in entries:
                store.set_locations(name, points)
            click.echo(f"seeded locations for {len(entries)} restaurants")
        if tips_file is not None:
            text = Path(tips_file).read_text(encoding="utf-8")
            try:
                tips = parse_tips(text)
            except SeedFileError as exc:
                click.echo(f"ERROR: {tips_file}: {exc}", err=True)
                sys.exit(1)
            for scope, label, tip_text in tips:
                store.upsert_tip(scope, label, tip_text)
            click.echo(f"seeded {len(tips)} tips")


@cli.command("admin-add")
@click.option("--username", required=True, help="Admin account to create or reset.")
@click.pass_obj
def admin_add(store_path, username):
    """Create an admin user; the credential is prompted without echo."""
    credential = click.prompt("Credential", hide_input=True, confirmation_prompt=True)
    with Store(store_path) as store:
        store.add_admin(username, credential)
    click.echo(f"admin {username!r} ready")


@cli.command()
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False),
    default="report",
    show_default=True,
    help="Directory for summary.csv and the PNG figures.",
)
@click.pass_obj
def report(store_path, out_dir):
    """Write a delimited menu summary and label-distribution figures."""
    from .report import write_report  # matplotlib import deferred to the report path

    with Store(store_path) as store:
        written = write_report(store, out_dir)
    for path in written:
        click.echo(str(path))


def main():
    cli()


if __name__ == "__main__":
    main()
