"""
Simulation runner for heatwave-ac.

Orchestrates the pipeline validate -> assign -> distribute -> simulate ->
summarize and writes the result files.
"""

import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from . import __version__
from .config import DEFAULT_CONFIG, get_int_config
from .errors import HeatwaveACError, handle_error
from .ingest import RunConfig, WeatherData, load_census, load_config, load_weather
from .model.activation import activation_curve
from .model.demand import (
    CellDemandTable,
    NationalDemandSeries,
    check_upper_bound,
    daily_energy,
    national_demand,
    peak,
    simulate_cells,
)
from .model.demographics import HOUSEHOLD_SIZES, distribute_many, validate_matrix
from .model.geo import GridCell, assign_station_indices
from .model.presence import PresenceProfile
from .model.stats import hourly_distribution, relative_increase, top_cells
from .outputs import (
    file_digest,
    write_cells_csv,
    write_geojson,
    write_manifest,
    write_national_csv,
    write_summary,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
SUMMARY_TOP_CELLS = 10


@dataclass(frozen=True)
class RunResult:
    """In-memory results of one simulation run."""

    cells: CellDemandTable
    national: NationalDemandSeries
    summary: dict[str, Any]
    station_of_cell: dict[str, str]


class SimulationRunner:
    """Loads validated inputs and runs the demand simulation."""

    def __init__(
        self,
        census_path: PathLike,
        weather_path: PathLike,
        config_path: Optional[PathLike] = None,
        threads: int = 1,
        chunk_size: Optional[int] = None,
    ):
        """
        Initialize the runner.

        Args:
            census_path: Census grid CSV
            weather_path: Weather station CSV
            config_path: TOML run config; None uses every default
            threads: Worker count for the cell loop
            chunk_size: Cells per work item (default from HEATWAVE_AC_CHUNK_SIZE)
        """
        self.census_path = Path(census_path)
        self.weather_path = Path(weather_path)
        self.config_path = Path(config_path) if config_path else None
        self.threads = threads
        self.chunk_size = chunk_size or get_int_config("HEATWAVE_AC_CHUNK_SIZE")
        if self.chunk_size < 1:
            self.chunk_size = int(DEFAULT_CONFIG["HEATWAVE_AC_CHUNK_SIZE"])

        self.config: Optional[RunConfig] = None
        self.cells: list[GridCell] = []
        self.weather: Optional[WeatherData] = None
        self.profile: Optional[PresenceProfile] = None

    def load_config(self) -> RunConfig:
        if self.config is None:
            self.config = load_config(self.config_path) if self.config_path else RunConfig()
        return self.config

    def load(self) -> None:
        """Load and validate every input; fails fast on the first problem."""
        config = self.load_config()
        try:
            result = validate_matrix(config.distribution_matrix())
            if not result.ok:
                raise result.errors[0]
            self.profile = config.presence_profile()
        except HeatwaveACError as e:
            handle_error(e, "validating model tables")
        try:
            self.cells = load_census(self.census_path)
        except HeatwaveACError as e:
            handle_error(e, f"loading census {self.census_path}")
        try:
            self.weather = load_weather(
                self.weather_path, date=config.date, utc_offset=config.utc_offset
            )
        except HeatwaveACError as e:
            handle_error(e, f"loading weather {self.weather_path}")

    def validate(self) -> dict[str, Any]:
        """
        Run every input check and collect the failures.

        Each input is checked independently so one report lists a problem per
        input. I/O errors are not caught.

        Returns:
            Report with ok flag, errors, and cell/station counts
        """
        errors: list[dict[str, Any]] = []
        config: Optional[RunConfig] = None
        try:
            config = self.load_config()
        except HeatwaveACError as e:
            errors.append({"input": "config", **e.to_dict()})

        if config is not None:
            for violation in validate_matrix(config.distribution_matrix()).errors:
                errors.append({"input": "matrix", **violation.to_dict()})
            try:
                config.presence_profile()
            except HeatwaveACError as e:
                errors.append({"input": "presence", **e.to_dict()})

        try:
            self.cells = load_census(self.census_path)
        except HeatwaveACError as e:
            errors.append({"input": "census", **e.to_dict()})

        weather_config = config or RunConfig()
        try:
            self.weather = load_weather(
                self.weather_path,
                date=weather_config.date,
                utc_offset=weather_config.utc_offset,
            )
        except HeatwaveACError as e:
            errors.append({"input": "weather", **e.to_dict()})

        if self.weather is not None and not self.weather.stations:
            errors.append(
                {
                    "input": "weather",
                    "error": "ConfigurationError",
                    "message": "at least one weather station is required",
                }
            )

        return {
            "ok": not errors,
            "errors": errors,
            "cells": len(self.cells),
            "stations": len(self.weather.stations) if self.weather else 0,
        }

    def simulate(self, baseline_gw: Optional[float] = None) -> RunResult:
        """
        Run the demand pipeline on loaded inputs.

        Args:
            baseline_gw: Baseline system load; overrides the config value

        Returns:
            RunResult with cell and national series plus the summary
        """
        if self.weather is None:
            self.load()
        config = self.load_config()
        weather = self.weather
        assert weather is not None

        cells = self.cells
        cell_ids = [cell.id for cell in cells]
        lat = np.array([cell.centroid.lat for cell in cells], dtype=float)
        lon = np.array([cell.centroid.lon for cell in cells], dtype=float)
        counts = np.array(
            [cell.households_by_size for cell in cells], dtype=float
        ).reshape(len(cells), len(HOUSEHOLD_SIZES))

        stations = weather.stations
        station_index = assign_station_indices(
            lat,
            lon,
            np.array([s.location.lat for s in stations], dtype=float),
            np.array([s.location.lon for s in stations], dtype=float),
            chunk_size=self.chunk_size,
        )
        logger.info(f"Assigned {len(cells)} cells to {len(stations)} stations")

        temperatures = np.array(
            [weather.series[s.id].values for s in stations], dtype=float
        )
        station_activation = activation_curve(config.activation, temperatures)
        group_counts = distribute_many(counts, config.distribution_matrix())
        profile = self.profile or config.presence_profile()

        table = simulate_cells(
            cell_ids,
            group_counts,
            station_index,
            station_activation,
            profile,
            config.scenario,
            threads=self.threads,
            chunk_size=self.chunk_size,
        )
        national = national_demand(table)
        total_households = float(counts.sum())
        check_upper_bound(national, total_households, config.scenario)

        summary = self._summarize(
            table,
            national,
            total_households,
            baseline_gw if baseline_gw is not None else config.baseline_gw,
        )
        station_of_cell = {
            cell_id: stations[index].id for cell_id, index in zip(cell_ids, station_index)
        }
        return RunResult(
            cells=table,
            national=national,
            summary=summary,
            station_of_cell=station_of_cell,
        )

    def _summarize(
        self,
        table: CellDemandTable,
        national: NationalDemandSeries,
        total_households: float,
        baseline_gw: Optional[float],
    ) -> dict[str, Any]:
        peak_hour, peak_kwh = peak(national)
        peak_gw = peak_kwh / 1e6
        summary: dict[str, Any] = {
            "cells": len(table),
            "stations": len(self.weather.stations) if self.weather else 0,
            "total_households": total_households,
            "peak_hour": peak_hour,
            "peak_gw": peak_gw,
            "daily_energy_gwh": daily_energy(national) / 1e6,
            "baseline_gw": baseline_gw,
            "relative_increase_pct": None,
            "hourly_distribution_kwh": [],
            "top_cells_at_peak": [],
        }
        if baseline_gw is not None:
            summary["relative_increase_pct"] = relative_increase(peak_gw, baseline_gw)
        if len(table):
            summary["hourly_distribution_kwh"] = hourly_distribution(table).rows()
            summary["top_cells_at_peak"] = [
                {"grid_id": cell_id, "kwh": value}
                for cell_id, value in top_cells(table, peak_hour, SUMMARY_TOP_CELLS)
            ]
        return summary

    def run(self, out_dir: PathLike, baseline_gw: Optional[float] = None) -> RunResult:
        """
        Simulate and write every result file into ``out_dir``.

        Returns:
            RunResult of the simulation
        """
        started = time.perf_counter()
        result = self.simulate(baseline_gw=baseline_gw)

        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        centroids = {cell.id: cell.centroid for cell in self.cells}
        write_cells_csv(out, result.cells)
        write_national_csv(out, result.national)
        write_summary(out, result.summary)
        write_geojson(out, result.cells, centroids)

        inputs = {
            "census": {"path": str(self.census_path), "sha256": file_digest(self.census_path)},
            "weather": {
                "path": str(self.weather_path),
                "sha256": file_digest(self.weather_path),
            },
        }
        if self.config_path:
            inputs["config"] = {
                "path": str(self.config_path),
                "sha256": file_digest(self.config_path),
            }
        presence_file = self.load_config().presence_file
        if presence_file is not None:
            inputs["presence"] = {
                "path": str(presence_file),
                "sha256": file_digest(presence_file),
            }
        write_manifest(
            out,
            {
                "tool": "heatwave-ac",
                "version": __version__,
                "inputs": inputs,
                "config": self.load_config().echo(),
                "cells": result.summary["cells"],
                "stations": result.summary["stations"],
                "duration_seconds": round(time.perf_counter() - started, 3),
            },
        )
        logger.info(
            f"Wrote results for {len(result.cells)} cells to {out} "
            f"(peak {result.summary['peak_gw']:.3f} GW at hour "
            f"{result.summary['peak_hour']})"
        )
        return result
