"""Operator report: delimited summary plus label-distribution figures.

Reads the store, writes summary.csv and two PNG charts into an output
directory. Meant for the CLI's report path; the service never calls this.
"""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # file output only; no display in scope
import matplotlib.pyplot as plt

from .store import Store
from .tld import TrafficLightLabel

LABEL_ORDER = [
    TrafficLightLabel.GREEN,
    TrafficLightLabel.YELLOW,
    TrafficLightLabel.RED,
    TrafficLightLabel.UNCLASSIFIED,
]
LABEL_COLORS = {
    TrafficLightLabel.GREEN: "#2e8b57",
    TrafficLightLabel.YELLOW: "#e0a800",
    TrafficLightLabel.RED: "#c0392b",
    TrafficLightLabel.UNCLASSIFIED: "#9e9e9e",
}


def label_counts(store: Store) -> tuple[list[tuple[str, Counter]], list[tuple[str, Counter]]]:
    """(per-restaurant, per-category) label Counters, each sorted by name."""
    by_restaurant: list[tuple[str, Counter]] = []
    by_category: dict[str, Counter] = {}
    for restaurant in store.restaurants():
        counts: Counter = Counter()
        for item in store.menu_for_restaurant(restaurant.id):
            counts[item.label] += 1
            if item.food_category:
                by_category.setdefault(item.food_category, Counter())[item.label] += 1
        by_restaurant.append((restaurant.name, counts))
    return by_restaurant, sorted(by_category.items())


def _stacked_bars(path: Path, title: str, rows: list[tuple[str, Counter]]):
    names = [name for name, _ in rows]
    height = max(2.5, 0.4 * len(rows) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    left = [0.0] * len(rows)
    for label in LABEL_ORDER:
        widths = [counts.get(label, 0) for _, counts in rows]
        ax.barh(names, widths, left=left, color=LABEL_COLORS[label], label=label.value)
        left = [x + w for x, w in zip(left, widths)]
    ax.invert_yaxis()
    ax.set_xlabel("menu items")
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(store: Store, out_dir: str | Path) -> list[Path]:
    """Write summary.csv and the label-distribution figures; returns paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    by_restaurant, by_category = label_counts(store)

    csv_path = out / "summary.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["restaurant", "green", "yellow", "red", "unclassified", "total"])
        for name, counts in by_restaurant:
            row = [counts.get(label, 0) for label in LABEL_ORDER]
            writer.writerow([name, *row, sum(row)])

    written = [csv_path]
    if by_restaurant:
        figure = out / "label_distribution.png"
        _stacked_bars(figure, "Traffic-light mix by restaurant", by_restaurant)
        written.append(figure)
    if by_category:
        figure = out / "category_labels.png"
        _stacked_bars(figure, "Traffic-light mix by food category", by_category)
        written.append(figure)
    return written
