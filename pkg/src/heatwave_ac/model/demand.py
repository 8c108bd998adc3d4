"""
Expected hourly AC demand per grid cell and nationally.

For a cell, the expected energy in hour h is the sum over demographic groups of
households x presence x activation probability, times unit power, time step and
adoption rate. The national series is the sum over all cells.
"""

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import DuplicateCellId, InvalidValue, InvariantViolation
from .activation import ActivationParams, activation_curve
from .demographics import GROUPS, DemographicHouseholds
from .presence import HOURS, PresenceProfile

logger = logging.getLogger(__name__)

UPPER_BOUND_TOLERANCE = 1e-9


class ScenarioParams(BaseModel):
    """Unit power (kW), adoption fraction and time step (hours)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    p_max: float = Field(default=2.1, gt=0, allow_inf_nan=False)
    eta: float = Field(default=0.16, ge=0, le=1, allow_inf_nan=False)
    dt: float = Field(default=1.0, gt=0, allow_inf_nan=False)

    @classmethod
    def from_adoption(
        cls, current: float, target: float, p_max: float = 2.1, dt: float = 1.0
    ) -> "ScenarioParams":
        """Scenario whose adoption rate is the increase from ``current`` to ``target``."""
        for name, rate in (("current_adoption", current), ("target_adoption", target)):
            if not 0.0 <= rate <= 1.0:
                raise InvalidValue(f"scenario.{name}", f"{rate!r} is not in [0, 1]")
        if target < current:
            raise InvalidValue(
                "scenario.target_adoption",
                f"target {target!r} is below current adoption {current!r}",
            )
        return cls(p_max=p_max, eta=target - current, dt=dt)

    @property
    def unit_energy(self) -> float:
        """Energy one running unit draws in one time step, in kWh."""
        return self.p_max * self.dt * self.eta


class TemperatureSeries(BaseModel):
    """Hourly local-time temperatures of one station for the simulated day."""

    model_config = ConfigDict(frozen=True)

    station_id: str
    values: tuple[float, ...]

    @field_validator("values")
    @classmethod
    def _twenty_four_finite(cls, values: tuple[float, ...]) -> tuple[float, ...]:
        if len(values) != HOURS:
            raise ValueError(f"expected {HOURS} hourly values, got {len(values)}")
        if not all(math.isfinite(value) for value in values):
            raise ValueError("temperatures must be finite")
        return values


@dataclass(frozen=True)
class CellDemandSeries:
    """Expected hourly energy (kWh) of one cell."""

    cell_id: str
    values: tuple[float, ...]

    @property
    def peak_kwh(self) -> float:
        return max(self.values)


@dataclass(frozen=True)
class NationalDemandSeries:
    """Expected hourly energy (kWh) summed over all cells."""

    values: tuple[float, ...]

    def in_gwh(self) -> tuple[float, ...]:
        return tuple(value / 1e6 for value in self.values)


@dataclass(frozen=True)
class CellDemandTable:
    """Demand of many cells as one (cells, 24) array, rows in ascending id order."""

    cell_ids: tuple[str, ...]
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.cell_ids)

    def series(self) -> Iterator[CellDemandSeries]:
        for cell_id, row in zip(self.cell_ids, self.values):
            yield CellDemandSeries(cell_id=cell_id, values=tuple(row.tolist()))

    @classmethod
    def from_series(cls, cells: Iterable[CellDemandSeries]) -> "CellDemandTable":
        """Collect series into a table sorted by cell id.

        Raises:
            DuplicateCellId: If a cell id appears twice
        """
        ordered = sorted(cells, key=lambda cell: cell.cell_id)
        for previous, current in zip(ordered, ordered[1:]):
            if previous.cell_id == current.cell_id:
                raise DuplicateCellId(current.cell_id)
        values = np.array([cell.values for cell in ordered], dtype=float)
        return cls(
            cell_ids=tuple(cell.cell_id for cell in ordered),
            values=values.reshape(len(ordered), HOURS),
        )


DemandInput = Union[CellDemandTable, Iterable[CellDemandSeries]]


def as_table(cells: DemandInput) -> CellDemandTable:
    if isinstance(cells, CellDemandTable):
        return cells
    return CellDemandTable.from_series(cells)


def expected_load(
    group_counts: np.ndarray,
    activation: np.ndarray,
    profile: PresenceProfile,
    scen: ScenarioParams,
) -> np.ndarray:
    """Core kernel: (n, 5) group counts and (n, 24) activation -> (n, 24) kWh.

    Groups are accumulated in canonical order with element-wise operations only,
    so every row is bit-identical whatever the batch it is computed in.
    """
    alpha = profile.as_array()
    present = np.zeros((group_counts.shape[0], HOURS), dtype=float)
    for d in range(len(GROUPS)):
        present += group_counts[:, d, None] * alpha[d][None, :]
    return present * activation * scen.unit_energy


def cell_demand(
    demo: DemographicHouseholds,
    profile: PresenceProfile,
    act: ActivationParams,
    temps: TemperatureSeries,
    scen: ScenarioParams,
) -> CellDemandSeries:
    """
    Expected hourly AC energy of one cell.

    Args:
        demo: Expected households per group for the cell
        profile: Presence probabilities
        act: Activation parameters
        temps: Temperatures of the cell's assigned station
        scen: Scenario parameters

    Returns:
        CellDemandSeries with 24 values in kWh
    """
    activation = activation_curve(act, np.array(temps.values, dtype=float))
    values = expected_load(
        np.array([demo.counts], dtype=float), activation[None, :], profile, scen
    )[0]
    return CellDemandSeries(cell_id=demo.cell_id, values=tuple(values.tolist()))


def simulate_cells(
    cell_ids: Sequence[str],
    group_counts: np.ndarray,
    station_index: np.ndarray,
    station_activation: np.ndarray,
    profile: PresenceProfile,
    scen: ScenarioParams,
    threads: int = 1,
    chunk_size: int = 4096,
) -> CellDemandTable:
    """Run the cell loop over fixed chunks on a bounded worker pool.

    Args:
        cell_ids: Ids in ascending order, aligned with the array rows
        group_counts: (n, 5) expected households per group
        station_index: (n,) row of ``station_activation`` for each cell
        station_activation: (stations, 24) activation probabilities
        profile: Presence probabilities
        scen: Scenario parameters
        threads: Worker count (1 runs inline)
        chunk_size: Cells per work item

    Returns:
        CellDemandTable aligned with ``cell_ids``
    """
    n = len(cell_ids)
    values = np.empty((n, HOURS), dtype=float)
    starts = range(0, n, chunk_size)

    def run_chunk(start: int) -> None:
        stop = min(start + chunk_size, n)
        # Each chunk writes a disjoint slice, so schedule order cannot matter.
        values[start:stop] = expected_load(
            group_counts[start:stop],
            station_activation[station_index[start:stop]],
            profile,
            scen,
        )

    if threads <= 1:
        for start in starts:
            run_chunk(start)
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            list(executor.map(run_chunk, starts))
    logger.debug(f"Simulated {n} cells in {len(starts)} chunks on {threads} workers")
    return CellDemandTable(cell_ids=tuple(cell_ids), values=values)


def national_demand(cells: DemandInput) -> NationalDemandSeries:
    """
    Sum cell demand per hour.

    Values are added in ascending cell-id order with ``math.fsum``, which is
    correctly rounded and therefore independent of worker count.

    Raises:
        DuplicateCellId: If a cell id appears twice
    """
    table = as_table(cells)
    if isinstance(cells, CellDemandTable) and len(set(table.cell_ids)) != len(table):
        seen: set[str] = set()
        for cell_id in table.cell_ids:
            if cell_id in seen:
                raise DuplicateCellId(cell_id)
            seen.add(cell_id)
    if len(table) == 0:
        return NationalDemandSeries(values=(0.0,) * HOURS)
    return NationalDemandSeries(
        values=tuple(math.fsum(table.values[:, h].tolist()) for h in range(HOURS))
    )


def peak(series: NationalDemandSeries) -> tuple[int, float]:
    """Hour of the largest value and the value; the earliest hour wins ties."""
    hour = max(range(len(series.values)), key=lambda h: (series.values[h], -h))
    return hour, series.values[hour]


def daily_energy(series: NationalDemandSeries) -> float:
    """Total energy over the day, in the series' unit."""
    return math.fsum(series.values)


def check_upper_bound(
    national: NationalDemandSeries, total_households: float, scen: ScenarioParams
) -> None:
    """Raise if any hour exceeds every household running its unit.

    Raises:
        InvariantViolation: If the bound is broken beyond rounding tolerance
    """
    bound = scen.unit_energy * total_households
    limit = bound * (1.0 + UPPER_BOUND_TOLERANCE)
    for h, value in enumerate(national.values):
        if value > limit:
            raise InvariantViolation(
                f"hour {h}: national demand {value!r} kWh exceeds bound {bound!r} kWh",
                hour=h,
                value=value,
                bound=bound,
            )
