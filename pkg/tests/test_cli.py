"""Operator CLI: ingest, seed, admin-add, report, serve, exit codes."""

import csv
import json
import socket
import subprocess
import sys
import time
from pathlib import Path

import httpx
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from menulight.cli import cli
from menulight.service import create_app
from menulight.store import Store

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_CORPUS = REPO_ROOT / "fixtures" / "corpus"
DEMO_LOCATIONS = REPO_ROOT / "fixtures" / "locations.txt"
DEMO_TIPS = REPO_ROOT / "fixtures" / "tips.txt"


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, store_path, *args, **kwargs):
    return runner.invoke(cli, ["--store", str(store_path), *args], **kwargs)


class TestIngestCommand:
    def test_ingest_demo_corpus(self, runner, tmp_path):
        store_path = tmp_path / "menus.db"
        result = invoke(runner, store_path, "ingest", "--root", str(DEMO_CORPUS / "index.html"))
        assert result.exit_code == 0, result.output
        manifest = json.loads((DEMO_CORPUS / "manifest.json").read_text())
        assert f"restaurants found:  {len(manifest['restaurants'])}" in result.output
        assert f"items extracted:    {manifest['total_items']}" in result.output
        with Store(store_path) as store:
            names = {r.name for r in store.restaurants()}
        assert names == {r["name"] for r in manifest["restaurants"]}

    def test_demo_corpus_matches_manifest_exactly(self, runner, tmp_path):
        store_path = tmp_path / "menus.db"
        invoke(runner, store_path, "ingest", "--root", str(DEMO_CORPUS / "index.html"))
        manifest = json.loads((DEMO_CORPUS / "manifest.json").read_text())
        with Store(store_path) as store:
            for entry in manifest["restaurants"]:
                items = store.menu_for_restaurant(entry["name"])
                got = {
                    (i.food_category, i.name, i.label.value, tuple(sorted(i.facts.as_dict().items())))
                    for i in items
                }
                expected = {
                    (
                        r["food_category"],
                        r["item_name"],
                        r["label"],
                        tuple(sorted(r["facts"].items())),
                    )
                    for r in entry["records"]
                }
                assert got == expected, entry["name"]

    def test_unreachable_root_exits_1(self, runner, tmp_path):
        result = invoke(runner, tmp_path / "m.db", "ingest", "--root", str(tmp_path / "nope.html"))
        assert result.exit_code == 1
        assert "ERROR" in result.output

    def test_missing_option_exits_2(self, runner, tmp_path):
        result = invoke(runner, tmp_path / "m.db", "ingest")
        assert result.exit_code == 2


class TestSeedCommand:
    def test_seed_locations_enables_nearby(self, runner, tmp_path):
        store_path = tmp_path / "menus.db"
        result = invoke(runner, store_path, "seed", "--locations", str(DEMO_LOCATIONS))
        assert result.exit_code == 0, result.output
        with Store(store_path) as store:
            client = TestClient(create_app(store))
            rows = client.get("/api/nearby", params={"lat": 32.2319, "lon": -110.9501}).json()
        assert [row["name"] for row in rows] == ["Burger Hut", "Bagel Box", "Salad Stop"]

    def test_seed_tips_round_trip(self, runner, tmp_path):
        store_path = tmp_path / "menus.db"
        result = invoke(runner, store_path, "seed", "--tips", str(DEMO_TIPS))
        assert result.exit_code == 0
        with Store(store_path) as store:
            client = TestClient(create_app(store))
            rows = client.get("/api/tips", params={"category": "Burgers", "label": "red"}).json()
        texts = [row["text"] for row in rows]
        assert "Order the single patty instead of the double." in texts
        assert "Split the portion or box half to go." in texts

    def test_malformed_line_cited_with_number(self, runner, tmp_path):
        bad = tmp_path / "locations.txt"
        bad.write_text(
            "# one\n# two\nGood | 1,1\n# four\n# five\nAlso Good | 2,2\nBroken Line Seven\n",
            encoding="utf-8",
        )
        result = invoke(runner, tmp_path / "m.db", "seed", "--locations", str(bad))
        assert result.exit_code == 1
        assert "line 7" in result.output

    def test_no_flags_is_usage_error(self, runner, tmp_path):
        result = invoke(runner, tmp_path / "m.db", "seed")
        assert result.exit_code == 2


class TestAdminAddCommand:
    def test_admin_add_then_login(self, runner, tmp_path):
        store_path = tmp_path / "menus.db"
        result = invoke(
            runner, store_path, "admin-add", "--username", "ops",
            input="s3cret-pw\ns3cret-pw\n",
        )
        assert result.exit_code == 0, result.output
        with Store(store_path) as store:
            client = TestClient(create_app(store))
            response = client.post(
                "/admin/login", json={"username": "ops", "credential": "s3cret-pw"}
            )
        assert response.status_code == 200
        assert response.json()["token"]


class TestReportCommand:
    def test_report_writes_csv_and_figures(self, runner, tmp_path):
        store_path = tmp_path / "menus.db"
        invoke(runner, store_path, "ingest", "--root", str(DEMO_CORPUS / "index.html"))
        out_dir = tmp_path / "out"
        result = invoke(runner, store_path, "report", "--out", str(out_dir))
        assert result.exit_code == 0, result.output
        assert (out_dir / "summary.csv").exists()
        assert (out_dir / "label_distribution.png").exists()
        assert (out_dir / "category_labels.png").exists()

        with open(out_dir / "summary.csv", newline="") as handle:
            rows = {row["restaurant"]: row for row in csv.DictReader(handle)}
        manifest = json.loads((DEMO_CORPUS / "manifest.json").read_text())
        for entry in manifest["restaurants"]:
            expected = {"green": 0, "yellow": 0, "red": 0, "unclassified": 0}
            for record in entry["records"]:
                expected[record["label"]] += 1
            row = rows[entry["name"]]
            for label, count in expected.items():
                assert int(row[label]) == count, (entry["name"], label)
            assert int(row["total"]) == len(entry["records"])


def _free_port():
    probe = socket.socket()
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]
    probe.close()
    return port


class TestServeCommand:
    def test_serve_answers_and_honors_default_radius(self, tmp_path):
        store_path = tmp_path / "menus.db"
        runner = CliRunner()
        invoke(runner, store_path, "seed", "--locations", str(DEMO_LOCATIONS))

        port = _free_port()
        process = subprocess.Popen(
            [
                sys.executable, "-m", "menulight.cli",
                "--store", str(store_path),
                "serve", "--bind", f"127.0.0.1:{port}", "--default-radius", "120",
            ],
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
        )
        try:
            base = f"http://127.0.0.1:{port}"
            deadline = time.monotonic() + 20
            while True:
                try:
                    response = httpx.get(f"{base}/api/categories", timeout=1.0)
                    break
                except httpx.HTTPError:
                    if time.monotonic() > deadline:
                        raise AssertionError("service never came up")
                    time.sleep(0.15)
            assert response.status_code == 200
            # Burger Hut sits ~33 m out; the others are past 120 m.
            rows = httpx.get(
                f"{base}/api/nearby", params={"lat": 32.2319, "lon": -110.9501}, timeout=2.0
            ).json()
            assert [row["name"] for row in rows] == ["Burger Hut"]
        finally:
            process.terminate()
            process.wait(timeout=10)

    def test_occupied_port_fails_fast_with_error(self, tmp_path):
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            result = subprocess.run(
                [
                    sys.executable, "-m", "menulight.cli",
                    "--store", str(tmp_path / "m.db"),
                    "serve", "--bind", f"127.0.0.1:{port}",
                ],
                capture_output=True,
                text=True,
                timeout=30,
            )
        finally:
            blocker.close()
        assert result.returncode == 1
        assert "cannot bind" in result.stderr


class TestEnvOverrides:
    def test_store_path_from_environment(self, runner, tmp_path, monkeypatch):
        store_path = tmp_path / "env.db"
        monkeypatch.setenv("MENULIGHT_STORE", str(store_path))
        result = runner.invoke(cli, ["ingest", "--root", str(DEMO_CORPUS / "index.html")])
        assert result.exit_code == 0, result.output
        assert store_path.exists()
