"""
Helpers for building heatwave-ac input files in tests.
"""

import datetime
import math
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from heatwave_ac.model.presence import HOURS

CENSUS_HEADER = "grid_id,lat,lon,hh_1,hh_2,hh_3,hh_4,hh_5,hh_6p"
WEATHER_HEADER = "station_id,lat,lon,timestamp_utc,temp_c"
SIM_DATE = datetime.date(2025, 7, 2)


def weather_rows(
    station: str,
    lat: float,
    lon: float,
    temps: list[Optional[float]],
    date: datetime.date = SIM_DATE,
    utc_offset: int = 2,
) -> list[str]:
    """CSV rows for one station; ``None`` entries are left out of the file."""
    start = datetime.datetime.combine(date, datetime.time()) - datetime.timedelta(
        hours=utc_offset
    )
    rows = []
    for h, temp in enumerate(temps):
        if temp is None:
            continue
        stamp = (start + datetime.timedelta(hours=h)).strftime("%Y-%m-%dT%H:%M:%SZ")
        rows.append(f"{station},{lat},{lon},{stamp},{temp}")
    return rows


def sinusoidal_temps(t_min: float, t_max: float, peak_hour: int = 15) -> list[float]:
    mean = (t_min + t_max) / 2
    amplitude = (t_max - t_min) / 2
    return [
        mean + amplitude * math.cos(2 * math.pi * (h - peak_hour) / HOURS)
        for h in range(HOURS)
    ]


def write_synthetic_inputs(
    directory: Path,
    n_cells: int,
    n_stations: int,
    seed: int = 7,
    temps: Optional[list[float]] = None,
) -> tuple[Path, Path]:
    """Random census grid over Germany plus warm-day weather for every station.

    Stations get random sinusoidal days unless ``temps`` fixes one series for all.
    """
    rng = np.random.default_rng(seed)
    census = pd.DataFrame(
        {
            "grid_id": [f"cell_{i:07d}" for i in range(n_cells)],
            "lat": rng.uniform(47.3, 55.0, n_cells).round(6),
            "lon": rng.uniform(5.9, 15.0, n_cells).round(6),
        }
    )
    for column in ("hh_1", "hh_2", "hh_3", "hh_4", "hh_5", "hh_6p"):
        census[column] = rng.integers(0, 400, n_cells)
    census_path = directory / "census.csv"
    census.to_csv(census_path, index=False, lineterminator="\n")

    lines = [WEATHER_HEADER]
    for s in range(n_stations):
        t_min = float(rng.uniform(14.0, 22.0))
        t_max = t_min + float(rng.uniform(8.0, 16.0))
        day = temps or [round(t, 3) for t in sinusoidal_temps(t_min, t_max)]
        lines.extend(
            weather_rows(
                f"st_{s:03d}",
                round(float(rng.uniform(47.3, 55.0)), 4),
                round(float(rng.uniform(5.9, 15.0)), 4),
                day,
            )
        )
    weather_path = directory / "weather.csv"
    weather_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return census_path, weather_path

