"""
Household-size to demographic-group distribution.

A row-stochastic 6x5 matrix gives, for every household size, the probability
that a household of that size belongs to each demographic group. Multiplying
a cell's household counts by the matrix yields expected household counts per
group.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Union

import numpy as np

from ..errors import EntryOutOfRange, InvalidValue, RowNotStochastic, ValidationError

if TYPE_CHECKING:
    from .geo import GridCell

logger = logging.getLogger(__name__)

HOUSEHOLD_SIZES: tuple[str, ...] = ("1", "2", "3", "4", "5", "6+")
ROW_SUM_TOLERANCE = 1e-9


class DemographicGroup(str, Enum):
    """Household archetypes, listed in canonical indexing order."""

    FAMILIES = "Families"
    COUPLES_WITHOUT_CHILDREN = "CouplesWithoutChildren"
    RETIRED = "Retired"
    SHARED_FLATS = "SharedFlats"
    SINGLES = "Singles"

    @property
    def position(self) -> int:
        return GROUPS.index(self)


GROUPS: tuple[DemographicGroup, ...] = tuple(DemographicGroup)
GROUP_NAMES: tuple[str, ...] = tuple(group.value for group in GROUPS)

# Percent shares per household size (rows) and group (columns, canonical order),
# estimated from 2022 German census household and pensioner tables.
HOUSEHOLD_COMPOSITION_PERCENT: tuple[tuple[float, ...], ...] = (
    (0, 0, 35, 0, 65),
    (15, 47, 31, 7, 0),
    (89, 8, 0, 3, 0),
    (96, 3, 0, 1, 0),
    (96, 2, 0, 1, 0),  # sums to 99
    (90, 6, 0, 4, 0),
)


class DistributionMatrix:
    """Read-only 6x5 matrix of P(group | household size)."""

    def __init__(self, entries: Any):
        array = np.array(entries, dtype=float)
        if array.shape != (len(HOUSEHOLD_SIZES), len(GROUPS)):
            raise InvalidValue(
                "matrix",
                f"expected shape {len(HOUSEHOLD_SIZES)}x{len(GROUPS)}, got "
                f"{'x'.join(str(n) for n in array.shape)}",
            )
        array.setflags(write=False)
        self._entries = array

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistributionMatrix):
            return NotImplemented
        return bool(np.array_equal(self._entries, other._entries))

    def __repr__(self) -> str:
        return f"DistributionMatrix({self._entries.tolist()!r})"

    def row(self, size: str) -> tuple[float, ...]:
        return tuple(self._entries[HOUSEHOLD_SIZES.index(size)].tolist())

    def as_dict(self) -> dict[str, dict[str, float]]:
        return {
            size: dict(zip(GROUP_NAMES, self._entries[i].tolist()))
            for i, size in enumerate(HOUSEHOLD_SIZES)
        }

    @classmethod
    def from_rows(
        cls, rows: Union[Mapping[str, Mapping[str, float]], Sequence[Sequence[float]]]
    ) -> "DistributionMatrix":
        """Build a matrix from config data.

        Accepts either a list of six rows in canonical group order, or a mapping
        from household size ("1".."6+") to a mapping of group name to
        probability. Missing groups in a named row count as 0.
        """
        if isinstance(rows, Mapping):
            unknown_sizes = set(rows) - set(HOUSEHOLD_SIZES)
            if unknown_sizes:
                raise InvalidValue(
                    "matrix", f"unknown household sizes {sorted(unknown_sizes)}"
                )
            missing_sizes = [size for size in HOUSEHOLD_SIZES if size not in rows]
            if missing_sizes:
                raise InvalidValue("matrix", f"missing household sizes {missing_sizes}")
            table = []
            for size in HOUSEHOLD_SIZES:
                row = rows[size]
                unknown_groups = set(row) - set(GROUP_NAMES)
                if unknown_groups:
                    raise InvalidValue(
                        f"matrix.{size}", f"unknown groups {sorted(unknown_groups)}"
                    )
                table.append([float(row.get(name, 0.0)) for name in GROUP_NAMES])
            return cls(table)
        return cls(rows)

    def validated(self) -> "DistributionMatrix":
        """Return self, raising the first violation if the matrix is invalid."""
        result = validate_matrix(self)
        if not result.ok:
            raise result.errors[0]
        return self


@dataclass
class MatrixValidation:
    """Outcome of ``validate_matrix``."""

    errors: list[ValidationError] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class DemographicHouseholds:
    """Expected household counts of one cell per demographic group."""

    cell_id: str
    counts: tuple[float, ...]

    def count(self, group: DemographicGroup) -> float:
        return self.counts[group.position]

    @property
    def total(self) -> float:
        return sum(self.counts)


def default_matrix() -> DistributionMatrix:
    """Household composition table with every row rescaled to sum to exactly 1."""
    table = np.array(HOUSEHOLD_COMPOSITION_PERCENT, dtype=float) / 100.0
    table = table / table.sum(axis=1, keepdims=True)
    return DistributionMatrix(table)


def validate_matrix(m: DistributionMatrix) -> MatrixValidation:
    """
    Check entry ranges and the row-sum constraint.

    Args:
        m: Matrix to check

    Returns:
        MatrixValidation listing every EntryOutOfRange and RowNotStochastic found
    """
    result = MatrixValidation()
    for i, size in enumerate(HOUSEHOLD_SIZES):
        row = m.entries[i]
        for j, name in enumerate(GROUP_NAMES):
            value = float(row[j])
            if not (0.0 <= value <= 1.0):
                result.errors.append(EntryOutOfRange(size, name, value))
        total = float(row.sum())
        if not (1.0 - ROW_SUM_TOLERANCE <= total <= 1.0 + ROW_SUM_TOLERANCE):
            result.errors.append(RowNotStochastic(size, total))
    return result


def distribute_many(counts: np.ndarray, m: DistributionMatrix) -> np.ndarray:
    """Vectorized distribution of an (n, 6) count array into (n, 5) group counts.

    Sizes are accumulated one at a time in fixed order, so a cell's result does
    not depend on which other cells share the batch.
    """
    counts = np.asarray(counts, dtype=float)
    result = np.zeros((counts.shape[0], len(GROUPS)), dtype=float)
    for s in range(len(HOUSEHOLD_SIZES)):
        result += counts[:, s, None] * m.entries[s][None, :]
    return result


def distribute(cell: "GridCell", m: DistributionMatrix) -> DemographicHouseholds:
    """
    Expected households per demographic group for one cell.

    Args:
        cell: Census grid cell
        m: Valid distribution matrix

    Returns:
        DemographicHouseholds with counts in canonical group order
    """
    row = distribute_many(np.array([cell.households_by_size], dtype=float), m)[0]
    return DemographicHouseholds(cell_id=cell.id, counts=tuple(row.tolist()))
