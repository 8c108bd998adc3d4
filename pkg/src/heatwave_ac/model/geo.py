"""
Grid cells, weather stations and the nearest-station mapping.

Every census cell takes its temperatures from the weather station closest to
its centroid by great-circle distance on a spherical Earth.
"""

import logging
import math
from collections.abc import Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import ConfigurationError, DuplicateGridId
from .demographics import HOUSEHOLD_SIZES

logger = logging.getLogger(__name__)

EARTH_RADIUS_KM = 6371.0
DEFAULT_CHUNK_SIZE = 4096


class GeoPoint(BaseModel):
    """A point in degrees latitude/longitude."""

    model_config = ConfigDict(frozen=True)

    lat: float = Field(ge=-90.0, le=90.0)
    lon: float = Field(ge=-180.0, le=180.0)


class GridCell(BaseModel):
    """One census grid cell with household counts by household size."""

    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    centroid: GeoPoint
    households_by_size: tuple[int, ...]

    @field_validator("households_by_size")
    @classmethod
    def _six_non_negative_counts(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if len(value) != len(HOUSEHOLD_SIZES):
            raise ValueError(
                f"expected {len(HOUSEHOLD_SIZES)} household counts, got {len(value)}"
            )
        if any(count < 0 for count in value):
            raise ValueError("household counts must be non-negative")
        return value

    @property
    def total_households(self) -> int:
        return sum(self.households_by_size)


class WeatherStation(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    location: GeoPoint


class StationAssignment(BaseModel):
    """Total mapping from cell id to the id of its weather station."""

    model_config = ConfigDict(frozen=True)

    mapping: dict[str, str]

    def __len__(self) -> int:
        return len(self.mapping)

    def station_for(self, cell_id: str) -> str:
        return self.mapping[cell_id]

    def cells_by_station(self) -> dict[str, list[str]]:
        """Group cell ids per station, both levels in ascending id order."""
        grouped: dict[str, list[str]] = {}
        for cell_id in sorted(self.mapping):
            grouped.setdefault(self.mapping[cell_id], []).append(cell_id)
        return dict(sorted(grouped.items()))


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """
    Calculate the great circle distance in kilometers between two points.

    Args:
        a: First point
        b: Second point

    Returns:
        Distance in kilometers on a sphere of radius 6371 km
    """
    lat1, lon1, lat2, lon2 = map(math.radians, (a.lat, a.lon, b.lat, b.lon))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(min(1.0, h)))


def haversine_matrix(
    lat: np.ndarray, lon: np.ndarray, station_lat: np.ndarray, station_lon: np.ndarray
) -> np.ndarray:
    """Pairwise great-circle distances, shape (cells, stations), in km."""
    lat1 = np.radians(lat)[:, None]
    lon1 = np.radians(lon)[:, None]
    lat2 = np.radians(station_lat)[None, :]
    lon2 = np.radians(station_lon)[None, :]
    h = (
        np.sin((lat2 - lat1) / 2) ** 2
        + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2) ** 2
    )
    return 2 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.minimum(1.0, h)))


def assign_station_indices(
    lat: np.ndarray,
    lon: np.ndarray,
    station_lat: np.ndarray,
    station_lon: np.ndarray,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> np.ndarray:
    """Index of the nearest station for each cell.

    Stations must already be ordered by id: ``argmin`` returns the first
    minimum, which makes the smallest id win a tie.
    """
    if len(station_lat) == 0:
        raise ConfigurationError("at least one weather station is required")
    result = np.empty(len(lat), dtype=np.intp)
    for start in range(0, len(lat), chunk_size):
        stop = start + chunk_size
        distances = haversine_matrix(
            lat[start:stop], lon[start:stop], station_lat, station_lon
        )
        result[start:stop] = np.argmin(distances, axis=1)
    return result


def sort_stations(stations: Iterable[WeatherStation]) -> list[WeatherStation]:
    """Stations in ascending id order; duplicate ids are a configuration error."""
    ordered = sorted(stations, key=lambda station: station.id)
    for previous, current in zip(ordered, ordered[1:]):
        if previous.id == current.id:
            raise ConfigurationError(f"duplicate weather station id {current.id!r}")
    return ordered


def assign_stations(
    cells: Iterable[GridCell], stations: Iterable[WeatherStation]
) -> StationAssignment:
    """
    Map every cell to its nearest weather station.

    Args:
        cells: Census grid cells
        stations: Candidate weather stations

    Returns:
        StationAssignment covering every input cell

    Raises:
        ConfigurationError: If there are no stations
        DuplicateGridId: If two cells share an id
    """
    ordered_stations = sort_stations(stations)
    if not ordered_stations:
        raise ConfigurationError("at least one weather station is required")

    ordered_cells = sorted(cells, key=lambda cell: cell.id)
    for previous, current in zip(ordered_cells, ordered_cells[1:]):
        if previous.id == current.id:
            raise DuplicateGridId(current.id)

    indices = assign_station_indices(
        np.array([cell.centroid.lat for cell in ordered_cells], dtype=float),
        np.array([cell.centroid.lon for cell in ordered_cells], dtype=float),
        np.array([s.location.lat for s in ordered_stations], dtype=float),
        np.array([s.location.lon for s in ordered_stations], dtype=float),
    )
    mapping = {
        cell.id: ordered_stations[index].id
        for cell, index in zip(ordered_cells, indices)
    }
    logger.debug(
        f"Assigned {len(mapping)} cells to {len(set(mapping.values()))} "
        f"of {len(ordered_stations)} stations"
    )
    return StationAssignment(mapping=mapping)
