"""Traffic-light food labeling.

Items are labeled by fat grams per serving: under 2 g is green ("eat
more"), 2 to 5 g inclusive is yellow ("eat moderately"), over 5 g is red
("eat less"). Items with no fat data are left unclassified and sort after
everything else so unknown food is never presented as healthy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Protocol, TypeVar

from .errors import InvalidNutritionError

# Fat thresholds in grams per serving. The boundaries belong to yellow:
# "less than 2" and "greater than 5" are strict, so [2, 5] closes the
# partition.
GREEN_BELOW_GRAMS = 2.0
RED_ABOVE_GRAMS = 5.0


class TrafficLightLabel(enum.Enum):
    GREEN = "green"
    YELLOW = "yellow"
    RED = "red"
    UNCLASSIFIED = "unclassified"

    @property
    def rank(self) -> int:
        """Health rank; lower is healthier and shown first."""
        return _RANKS[self]

    @classmethod
    def from_value(cls, value: str) -> "TrafficLightLabel":
        try:
            return cls(value.lower())
        except (ValueError, AttributeError):
            raise ValueError(f"unknown traffic-light label: {value!r}") from None


_RANKS = {
    TrafficLightLabel.GREEN: 0,
    TrafficLightLabel.YELLOW: 1,
    TrafficLightLabel.RED: 2,
    TrafficLightLabel.UNCLASSIFIED: 3,
}

_NUTRIENT_FIELDS = (
    "calories",
    "total_fat",
    "saturated_fat",
    "dietary_fiber",
    "protein",
    "carbohydrates",
    "sodium",
)


@dataclass(frozen=True)
class NutritionFacts:
    """Per-serving nutrient quantities. Any field may be absent (None).

    Masses are grams except sodium (milligrams); calories are kcal.
    """

    calories: float | None = None
    total_fat: float | None = None
    saturated_fat: float | None = None
    dietary_fiber: float | None = None
    protein: float | None = None
    carbohydrates: float | None = None
    sodium: float | None = None

    def __post_init__(self):
        for field in _NUTRIENT_FIELDS:
            value = getattr(self, field)
            if value is None:
                continue
            if not math.isfinite(value) or value < 0:
                raise InvalidNutritionError(f"{field} must be finite and >= 0, got {value!r}")
        if (
            self.saturated_fat is not None
            and self.total_fat is not None
            and self.saturated_fat > self.total_fat
        ):
            raise InvalidNutritionError(
                f"saturated_fat {self.saturated_fat} exceeds total_fat {self.total_fat}"
            )

    def as_dict(self) -> dict[str, float | None]:
        return {field: getattr(self, field) for field in _NUTRIENT_FIELDS}


def classify(fat_grams: float | None) -> TrafficLightLabel:
    """Label a food item by its fat grams per serving.

    None means the fat content is unknown and yields UNCLASSIFIED.
    Negative or non-finite values signal corrupt ingested data and raise
    InvalidNutritionError.
    """
    if fat_grams is None:
        return TrafficLightLabel.UNCLASSIFIED
    if not math.isfinite(fat_grams) or fat_grams < 0:
        raise InvalidNutritionError(f"fat grams must be finite and >= 0, got {fat_grams!r}")
    if fat_grams < GREEN_BELOW_GRAMS:
        return TrafficLightLabel.GREEN
    if fat_grams <= RED_ABOVE_GRAMS:
        return TrafficLightLabel.YELLOW
    return TrafficLightLabel.RED


class Labeled(Protocol):
    name: str

    @property
    def label(self) -> TrafficLightLabel: ...


_ItemT = TypeVar("_ItemT", bound="Labeled")


def order_menu(items: Iterable[_ItemT]) -> list[_ItemT]:
    """Order menu items green first, then yellow, red, unclassified.

    Within one label, items sort ascending by case-insensitive name; the
    sort is stable for identical names.
    """
    return sorted(items, key=lambda item: (item.label.rank, item.name.casefold()))
