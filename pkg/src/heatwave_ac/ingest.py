"""
Input loading for heatwave-ac.

Parses and validates the census grid CSV, the weather station CSV and the TOML
run configuration into domain values. Every function fails fast with a
``ValidationError`` subclass that names the offending line, key or station.
"""

import datetime
import logging
import math
import re
import sys
from collections.abc import Iterable
from pathlib import Path
from typing import Any, Optional, TextIO, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as PydanticValidationError

from .errors import (
    DuplicateGridId,
    DuplicateReading,
    InvalidCoordinate,
    InvalidValue,
    MalformedRow,
    MalformedTimestamp,
    MissingHours,
    UnknownKey,
)
from .model.activation import ActivationParams
from .model.demand import ScenarioParams, TemperatureSeries
from .model.demographics import DistributionMatrix, default_matrix, validate_matrix
from .model.geo import GeoPoint, GridCell, WeatherStation, sort_stations
from .model.presence import HOURS, PresenceProfile, default_profiles, load_profiles

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

Source = Union[str, Path, TextIO]

CENSUS_COLUMNS: tuple[str, ...] = (
    "grid_id",
    "lat",
    "lon",
    "hh_1",
    "hh_2",
    "hh_3",
    "hh_4",
    "hh_5",
    "hh_6p",
)
WEATHER_COLUMNS: tuple[str, ...] = ("station_id", "lat", "lon", "timestamp_utc", "temp_c")
MASKED_COUNT_VALUES = frozenset({"", "-1"})
DEFAULT_DATE = datetime.date(2025, 7, 2)
DEFAULT_UTC_OFFSET = 2

_PARSER_LINE = re.compile(r"line (\d+)")


def _read_table(source: Source, columns: tuple[str, ...]) -> pd.DataFrame:
    """
    Read a CSV as strings and check its header (line 1).

    The header is read as an ordinary row so that a data row with more fields
    than the header is a parser error rather than an inferred index column.
    """
    try:
        frame = pd.read_csv(
            source,
            header=None,
            index_col=False,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise MalformedRow(1, "empty file") from None
    except pd.errors.ParserError as e:
        match = _PARSER_LINE.search(str(e))
        raise MalformedRow(int(match.group(1)) if match else 0, str(e)) from None
    header = tuple(str(value).strip() for value in frame.iloc[0])
    if header != columns:
        raise MalformedRow(1, f"expected header {','.join(columns)}")
    frame = frame.iloc[1:].reset_index(drop=True)
    frame.columns = list(columns)
    return frame


def _cells(frame: pd.DataFrame) -> Iterable[tuple[int, tuple[Any, ...]]]:
    # first data row is line 2
    for offset, row in enumerate(frame.itertuples(index=False, name=None)):
        yield offset + 2, row


def _parse_coordinate(line: int, lat: Any, lon: Any) -> GeoPoint:
    try:
        latitude = float(lat)
        longitude = float(lon)
    except (TypeError, ValueError):
        raise InvalidCoordinate(line, lat, lon) from None
    if not (-90.0 <= latitude <= 90.0 and -180.0 <= longitude <= 180.0):
        raise InvalidCoordinate(line, lat, lon)
    return GeoPoint(lat=latitude, lon=longitude)


def _parse_count(line: int, column: str, raw: Any) -> int:
    if not isinstance(raw, str):
        raise MalformedRow(line, f"missing field {column}")
    value = raw.strip()
    if value in MASKED_COUNT_VALUES:
        return 0
    try:
        count = int(value)
    except ValueError:
        raise MalformedRow(line, f"{column}={value!r} is not an integer") from None
    if count < 0:
        raise MalformedRow(line, f"{column}={count} is negative")
    return count


def load_census(source: Source) -> list[GridCell]:
    """
    Load census grid cells.

    Masked counts (empty field or ``-1``) become 0.

    Args:
        source: Path or text stream of the census CSV

    Returns:
        Grid cells in ascending id order

    Raises:
        MalformedRow: Bad header, field count or count value
        InvalidCoordinate: Non-numeric or out-of-range centroid
        DuplicateGridId: Two rows share a grid_id
    """
    frame = _read_table(source, CENSUS_COLUMNS)
    cells: dict[str, GridCell] = {}
    for line, row in _cells(frame):
        grid_id = row[0].strip() if isinstance(row[0], str) else ""
        if not grid_id:
            raise MalformedRow(line, "empty grid_id")
        if grid_id in cells:
            raise DuplicateGridId(grid_id)
        centroid = _parse_coordinate(line, row[1], row[2])
        counts = tuple(
            _parse_count(line, column, raw)
            for column, raw in zip(CENSUS_COLUMNS[3:], row[3:])
        )
        cells[grid_id] = GridCell(
            id=grid_id, centroid=centroid, households_by_size=counts
        )
    logger.info(f"Loaded {len(cells)} census grid cells")
    return [cells[grid_id] for grid_id in sorted(cells)]


def dump_census(cells: Iterable[GridCell], path: Union[str, Path]) -> None:
    """Write cells in the census CSV format, sorted by id."""
    ordered = sorted(cells, key=lambda cell: cell.id)
    frame = pd.DataFrame(
        [
            (cell.id, cell.centroid.lat, cell.centroid.lon, *cell.households_by_size)
            for cell in ordered
        ],
        columns=list(CENSUS_COLUMNS),
    )
    frame.to_csv(path, index=False, lineterminator="\n")


class WeatherData(BaseModel):
    """Stations (ascending id) and their local-time series for one day."""

    model_config = ConfigDict(frozen=True)

    stations: tuple[WeatherStation, ...]
    series: dict[str, TemperatureSeries]


def _parse_timestamp(line: int, raw: Any) -> datetime.datetime:
    """ISO-8601 timestamp as a naive UTC datetime on the full hour."""
    if not isinstance(raw, str) or not raw.strip():
        raise MalformedTimestamp(line, str(raw))
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        stamp = datetime.datetime.fromisoformat(text)
    except ValueError:
        raise MalformedTimestamp(line, raw) from None
    if stamp.tzinfo is not None:
        stamp = stamp.astimezone(datetime.timezone.utc).replace(tzinfo=None)
    if stamp.minute or stamp.second or stamp.microsecond:
        raise MalformedTimestamp(line, raw)
    return stamp


def _fill_gaps(station: str, readings: dict[int, float]) -> tuple[float, ...]:
    """Interpolate single interior gaps; anything larger is an error."""
    missing = [h for h in range(HOURS) if h not in readings]
    if not missing:
        return tuple(readings[h] for h in range(HOURS))
    at_edge = missing[0] == 0 or missing[-1] == HOURS - 1
    consecutive = any(b - a == 1 for a, b in zip(missing, missing[1:]))
    if at_edge or consecutive:
        raise MissingHours(station, missing)
    filled = dict(readings)
    for h in missing:
        filled[h] = (readings[h - 1] + readings[h + 1]) / 2.0
        logger.warning(f"Station {station}: interpolated missing hour {h}")
    return tuple(filled[h] for h in range(HOURS))


def load_weather(
    source: Source, date: datetime.date = DEFAULT_DATE, utc_offset: int = DEFAULT_UTC_OFFSET
) -> WeatherData:
    """
    Load station temperatures for the 24 local-time hours of ``date``.

    Args:
        source: Path or text stream of the weather CSV
        date: Simulation day in local time
        utc_offset: Local time minus UTC, in hours

    Returns:
        WeatherData with one TemperatureSeries per station

    Raises:
        MalformedRow: Bad header, location or temperature
        MalformedTimestamp: Timestamp is not ISO-8601 on the full hour
        DuplicateReading: Two readings map to the same local hour
        MissingHours: Leading, trailing or consecutive hours are missing
    """
    frame = _read_table(source, WEATHER_COLUMNS)
    offset = datetime.timedelta(hours=utc_offset)
    locations: dict[str, GeoPoint] = {}
    readings: dict[str, dict[int, float]] = {}
    for line, row in _cells(frame):
        station = row[0].strip() if isinstance(row[0], str) else ""
        if not station:
            raise MalformedRow(line, "empty station_id")
        location = _parse_coordinate(line, row[1], row[2])
        known = locations.setdefault(station, location)
        if known != location:
            raise MalformedRow(line, f"station {station} changes location")
        local = _parse_timestamp(line, row[3]) + offset
        try:
            temperature = float(row[4])
        except (TypeError, ValueError):
            raise MalformedRow(line, f"temp_c={row[4]!r} is not a number") from None
        if not math.isfinite(temperature):
            raise MalformedRow(line, f"temp_c={row[4]!r} is not finite")
        hours = readings.setdefault(station, {})
        if local.date() != date:
            continue
        if local.hour in hours:
            raise DuplicateReading(station, local.hour)
        hours[local.hour] = temperature

    stations = sort_stations(
        WeatherStation(id=station, location=location)
        for station, location in locations.items()
    )
    series = {
        station.id: TemperatureSeries(
            station_id=station.id, values=_fill_gaps(station.id, readings[station.id])
        )
        for station in stations
    }
    logger.info(f"Loaded weather for {len(stations)} stations on {date.isoformat()}")
    return WeatherData(stations=tuple(stations), series=series)


class ScenarioConfig(BaseModel):
    """The ``[scenario]`` table; adoption may be given as eta or as a rate pair."""

    model_config = ConfigDict(extra="forbid")

    p_max: float = Field(default=2.1, gt=0, allow_inf_nan=False)
    eta: Optional[float] = Field(default=None, ge=0, le=1, allow_inf_nan=False)
    dt: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    current_adoption: Optional[float] = Field(default=None, ge=0, le=1)
    target_adoption: Optional[float] = Field(default=None, ge=0, le=1)

    def to_params(self) -> ScenarioParams:
        pair = (self.current_adoption, self.target_adoption)
        if all(rate is None for rate in pair):
            eta = ScenarioParams().eta if self.eta is None else self.eta
            return ScenarioParams(p_max=self.p_max, eta=eta, dt=self.dt)
        if self.eta is not None:
            raise InvalidValue(
                "scenario.eta",
                "give either eta or current_adoption/target_adoption, not both",
            )
        if any(rate is None for rate in pair):
            raise InvalidValue(
                "scenario",
                "current_adoption and target_adoption must be given together",
            )
        return ScenarioParams.from_adoption(
            self.current_adoption, self.target_adoption, p_max=self.p_max, dt=self.dt
        )


class _ConfigDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    date: datetime.date = DEFAULT_DATE
    utc_offset: int = Field(default=DEFAULT_UTC_OFFSET, ge=-12, le=14)
    baseline_gw: Optional[float] = Field(default=None, gt=0, allow_inf_nan=False)
    presence_file: Optional[str] = None
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig)
    activation: ActivationParams = Field(default_factory=ActivationParams)
    matrix: Optional[dict[str, dict[str, float]]] = None


class RunConfig(BaseModel):
    """Fully validated run configuration."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scenario: ScenarioParams = Field(default_factory=ScenarioParams)
    activation: ActivationParams = Field(default_factory=ActivationParams)
    matrix: Optional[DistributionMatrix] = None
    presence_file: Optional[Path] = None
    date: datetime.date = DEFAULT_DATE
    utc_offset: int = Field(default=DEFAULT_UTC_OFFSET, ge=-12, le=14)
    baseline_gw: Optional[float] = Field(default=None, gt=0)

    def distribution_matrix(self) -> DistributionMatrix:
        return self.matrix if self.matrix is not None else default_matrix()

    def presence_profile(self) -> PresenceProfile:
        if self.presence_file is None:
            return default_profiles()
        return load_profiles(self.presence_file)

    def echo(self) -> dict[str, Any]:
        """JSON-ready copy of the effective settings."""
        return {
            "scenario": self.scenario.model_dump(),
            "activation": self.activation.model_dump(),
            "matrix": self.distribution_matrix().as_dict(),
            "presence_file": str(self.presence_file) if self.presence_file else None,
            "date": self.date.isoformat(),
            "utc_offset": self.utc_offset,
            "baseline_gw": self.baseline_gw,
        }


def _translate(error: PydanticValidationError) -> Exception:
    first = error.errors()[0]
    path = ".".join(str(part) for part in first["loc"]) or "<document>"
    if first["type"] == "extra_forbidden":
        return UnknownKey(path)
    return InvalidValue(path, first["msg"])


def parse_config(data: dict[str, Any], base_dir: Optional[Path] = None) -> RunConfig:
    """
    Validate a decoded TOML document into a RunConfig.

    Args:
        data: Decoded TOML tables
        base_dir: Directory that relative ``presence_file`` paths resolve against

    Raises:
        UnknownKey: A key is not part of the schema
        InvalidValue: A value is out of range or of the wrong type
    """
    try:
        document = _ConfigDocument.model_validate(data)
    except PydanticValidationError as e:
        raise _translate(e) from None

    matrix = None
    if document.matrix is not None:
        matrix = DistributionMatrix.from_rows(document.matrix)
        result = validate_matrix(matrix)
        if not result.ok:
            raise result.errors[0]

    presence_file = None
    if document.presence_file is not None:
        presence_file = Path(document.presence_file)
        if not presence_file.is_absolute() and base_dir is not None:
            presence_file = base_dir / presence_file

    return RunConfig(
        scenario=document.scenario.to_params(),
        activation=document.activation,
        matrix=matrix,
        presence_file=presence_file,
        date=document.date,
        utc_offset=document.utc_offset,
        baseline_gw=document.baseline_gw,
    )


def load_config(source: Union[str, Path]) -> RunConfig:
    """
    Load the TOML run configuration; every key is optional.

    Raises:
        OSError: If the file cannot be read
        UnknownKey: A key is not part of the schema
        InvalidValue: A value is invalid or the document is not TOML
    """
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise InvalidValue("<document>", str(e)) from None
    config = parse_config(data, base_dir=path.parent)
    logger.debug(f"Loaded run config from {path}")
    return config
