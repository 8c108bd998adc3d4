"""
Shared pytest fixtures for heatwave-ac tests.

This module provides input-file factories and small domain objects used
across multiple test files.
"""

from pathlib import Path
from typing import Optional

import numpy as np
import pytest
from helpers import CENSUS_HEADER, WEATHER_HEADER, weather_rows

from heatwave_ac.model.demographics import GROUPS
from heatwave_ac.model.geo import GeoPoint, GridCell, WeatherStation
from heatwave_ac.model.presence import HOURS, PresenceProfile

# =============================================================================
# Input File Fixtures
# =============================================================================


@pytest.fixture
def census_csv(tmp_path):
    """Factory fixture writing a census CSV from data rows.

    Usage:
        def test_something(census_csv):
            path = census_csv(["cell_a,52.5,13.4,10,5,2,1,0,0"])
    """

    def _write(rows: list[str], header: str = CENSUS_HEADER) -> Path:
        path = tmp_path / "census.csv"
        path.write_text("\n".join([header, *rows]) + "\n", encoding="utf-8")
        return path

    return _write


@pytest.fixture
def weather_csv(tmp_path):
    """Factory fixture writing a weather CSV from (station, lat, lon, temps) tuples."""

    def _write(stations: list[tuple[str, float, float, list[Optional[float]]]]) -> Path:
        lines = [WEATHER_HEADER]
        for station, lat, lon, temps in stations:
            lines.extend(weather_rows(station, lat, lon, temps))
        path = tmp_path / "weather.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write


@pytest.fixture
def config_toml(tmp_path):
    """Factory fixture writing a TOML run config."""

    def _write(text: str = "") -> Path:
        path = tmp_path / "run.toml"
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def three_cell_inputs(census_csv, weather_csv):
    """Three cells, two stations with known temperatures."""
    census = census_csv(
        [
            "berlin_1,52.52,13.40,10,5,2,1,0,0",
            "berlin_2,52.50,13.45,0,20,0,0,0,0",
            "munich_1,48.14,11.58,3,7,2,1,0,0",
        ]
    )
    weather = weather_csv(
        [
            ("berlin", 52.51, 13.41, [18.0 + h * 0.5 for h in range(HOURS)]),
            ("munich", 48.14, 11.57, [24.0] * HOURS),
        ]
    )
    return census, weather


# =============================================================================
# Domain Object Fixtures
# =============================================================================


@pytest.fixture
def always_home():
    """Presence profile with every household always at home."""
    return PresenceProfile(np.ones((len(GROUPS), HOURS)))


@pytest.fixture
def berlin():
    return GeoPoint(lat=52.52, lon=13.405)


@pytest.fixture
def munich():
    return GeoPoint(lat=48.137, lon=11.575)


@pytest.fixture
def make_cell():
    """Factory fixture for grid cells."""

    def _make(
        cell_id: str, counts=(0, 0, 0, 0, 0, 0), lat: float = 52.0, lon: float = 13.0
    ) -> GridCell:
        return GridCell(
            id=cell_id,
            centroid=GeoPoint(lat=lat, lon=lon),
            households_by_size=tuple(counts),
        )

    return _make


@pytest.fixture
def make_station():
    def _make(station_id: str, lat: float, lon: float) -> WeatherStation:
        return WeatherStation(id=station_id, location=GeoPoint(lat=lat, lon=lon))

    return _make
