"""
Summary statistics over simulated cell demand.

Percentiles use the nearest-rank method (no interpolation) so results are exact
and identical on every platform.
"""

import heapq
import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..errors import EmptyInput, NonPositiveBaseline
from .demand import (
    CellDemandTable,
    DemandInput,
    NationalDemandSeries,
    as_table,
    national_demand,
    peak,
)
from .geo import GeoPoint
from .presence import HOURS

logger = logging.getLogger(__name__)

PERCENTILES: tuple[tuple[str, float], ...] = (
    ("p25", 25.0),
    ("median", 50.0),
    ("p75", 75.0),
    ("p99", 99.0),
)


@dataclass(frozen=True)
class HourStats:
    hour: int
    min: float
    p25: float
    median: float
    p75: float
    p99: float
    max: float


@dataclass(frozen=True)
class HourlyDistribution:
    """Per-hour spread of cell demand values, in kWh."""

    hours: tuple[HourStats, ...]

    def rows(self) -> list[dict[str, Any]]:
        return [
            {
                "hour": s.hour,
                "min": s.min,
                "p25": s.p25,
                "median": s.median,
                "p75": s.p75,
                "p99": s.p99,
                "max": s.max,
            }
            for s in self.hours
        ]


@dataclass(frozen=True)
class RegionSummary:
    """Demand of the cells inside a lat/lon bounding box."""

    cell_count: int
    hourly: NationalDemandSeries
    peak_hour: int
    peak_kwh: float


def nearest_rank(sorted_values: np.ndarray, q: float) -> float:
    """Value at rank ceil(q/100 * n), clamped to [1, n]."""
    n = len(sorted_values)
    rank = min(max(math.ceil(q / 100.0 * n), 1), n)
    return float(sorted_values[rank - 1])


def hourly_distribution(cells: DemandInput) -> HourlyDistribution:
    """
    Min, quartiles, p99 and max of cell values for each hour.

    Raises:
        EmptyInput: If there are no cells
    """
    table = as_table(cells)
    if len(table) == 0:
        raise EmptyInput("cells")
    hours = []
    for h in range(HOURS):
        column = np.sort(table.values[:, h], kind="stable")
        quantiles = {name: nearest_rank(column, q) for name, q in PERCENTILES}
        hours.append(
            HourStats(
                hour=h, min=float(column[0]), max=float(column[-1]), **quantiles
            )
        )
    return HourlyDistribution(hours=tuple(hours))


def top_cells(cells: DemandInput, hour: int, n: int) -> list[tuple[str, float]]:
    """
    The ``n`` highest-demand cells at ``hour``, descending.

    Ties are listed in ascending cell id order. Fewer than ``n`` cells returns
    all of them.
    """
    if not 0 <= hour < HOURS:
        raise ValueError(f"hour must be in [0, {HOURS - 1}], got {hour}")
    if n < 1:
        raise ValueError("n must be 1 or greater")
    table = as_table(cells)
    column = table.values[:, hour]
    order = heapq.nsmallest(
        n, range(len(table)), key=lambda i: (-column[i], table.cell_ids[i])
    )
    return [(table.cell_ids[i], float(column[i])) for i in order]


def relative_increase(peak_value: float, baseline: float) -> float:
    """Peak additional load as a percentage of the baseline system load.

    Raises:
        NonPositiveBaseline: If baseline is not positive
    """
    if not baseline > 0:
        raise NonPositiveBaseline(baseline)
    return 100.0 * peak_value / baseline


def region_summary(
    cells: DemandInput,
    centroids: Mapping[str, GeoPoint],
    bbox: tuple[float, float, float, float],
) -> RegionSummary:
    """
    Aggregate the cells whose centroid lies inside a bounding box.

    Args:
        cells: Cell demand
        centroids: Centroid per cell id
        bbox: (min_lat, min_lon, max_lat, max_lon), edges inclusive

    Raises:
        EmptyInput: If no cell falls inside the box
    """
    min_lat, min_lon, max_lat, max_lon = bbox
    if min_lat > max_lat or min_lon > max_lon:
        raise ValueError(f"bounding box {bbox} has min above max")
    table = as_table(cells)
    inside = [
        i
        for i, cell_id in enumerate(table.cell_ids)
        if cell_id in centroids
        and min_lat <= centroids[cell_id].lat <= max_lat
        and min_lon <= centroids[cell_id].lon <= max_lon
    ]
    if not inside:
        raise EmptyInput("cells inside the bounding box")
    subset = CellDemandTable(
        cell_ids=tuple(table.cell_ids[i] for i in inside), values=table.values[inside]
    )
    hourly = national_demand(subset)
    peak_hour, peak_kwh = peak(hourly)
    return RegionSummary(
        cell_count=len(inside), hourly=hourly, peak_hour=peak_hour, peak_kwh=peak_kwh
    )
