"""
Hourly at-home probabilities per demographic group.

The probability that at least one member of a household is at home, for each
hour of a working day in local time. A built-in table serves as default; a CSV
file can replace it completely.
"""

import io
import logging
import math
import re
from pathlib import Path
from typing import Any, TextIO, Union

import numpy as np
import pandas as pd

from ..errors import (
    MalformedRow,
    MissingGroup,
    MissingHour,
    UnknownGroup,
    ValueOutOfRange,
)
from .demographics import GROUP_NAMES, GROUPS, DemographicGroup

logger = logging.getLogger(__name__)

HOURS = 24
HOUR_COLUMNS: tuple[str, ...] = tuple(f"h{h}" for h in range(HOURS))

_PARSER_LINE = re.compile(r"line (\d+)")

# (first hour, last hour, probability) spans per group; last hour inclusive.
DEFAULT_PRESENCE_SPANS: dict[DemographicGroup, tuple[tuple[int, int, float], ...]] = {
    DemographicGroup.FAMILIES: (
        (0, 6, 0.95),
        (7, 8, 0.60),
        (9, 14, 0.45),
        (15, 16, 0.75),
        (17, 23, 0.90),
    ),
    DemographicGroup.COUPLES_WITHOUT_CHILDREN: (
        (0, 6, 0.95),
        (7, 8, 0.50),
        (9, 16, 0.30),
        (17, 17, 0.60),
        (18, 23, 0.85),
    ),
    DemographicGroup.RETIRED: ((0, 6, 0.95), (7, 21, 0.90), (22, 23, 0.95)),
    DemographicGroup.SHARED_FLATS: (
        (0, 6, 0.90),
        (7, 8, 0.60),
        (9, 17, 0.50),
        (18, 23, 0.75),
    ),
    DemographicGroup.SINGLES: (
        (0, 6, 0.95),
        (7, 8, 0.45),
        (9, 17, 0.25),
        (18, 18, 0.55),
        (19, 23, 0.80),
    ),
}


class PresenceProfile:
    """Read-only 5x24 table of presence probabilities in canonical group order."""

    def __init__(self, entries: Any):
        array = np.array(entries, dtype=float)
        if array.ndim != 2 or array.shape[0] != len(GROUPS):
            raise MissingGroup(GROUP_NAMES[min(len(array), len(GROUPS) - 1)])
        if array.shape[1] != HOURS:
            raise MissingHour(GROUP_NAMES[0], min(array.shape[1], HOURS - 1))
        for (i, h), value in np.ndenumerate(array):
            if not (0.0 <= value <= 1.0):
                raise ValueOutOfRange(GROUP_NAMES[i], h, float(value))
        array.setflags(write=False)
        self._entries = array

    def as_array(self) -> np.ndarray:
        return self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PresenceProfile):
            return NotImplemented
        return bool(np.array_equal(self._entries, other._entries))

    def __repr__(self) -> str:
        return f"PresenceProfile({self._entries.tolist()!r})"


def default_profiles() -> PresenceProfile:
    """The built-in working-day presence table."""
    table = np.zeros((len(GROUPS), HOURS), dtype=float)
    for group, spans in DEFAULT_PRESENCE_SPANS.items():
        for first, last, probability in spans:
            table[group.position, first : last + 1] = probability
    return PresenceProfile(table)


def presence(p: PresenceProfile, d: DemographicGroup, h: int) -> float:
    """Probability that a household of group ``d`` is home at hour ``h``."""
    if not 0 <= h < HOURS:
        raise ValueError(f"hour must be in [0, {HOURS - 1}], got {h}")
    return float(p.as_array()[DemographicGroup(d).position, h])


def load_profiles(source: Union[str, Path, TextIO]) -> PresenceProfile:
    """
    Load a presence override CSV with header ``group,h0,...,h23``.

    Args:
        source: File path or open text stream

    Returns:
        Validated PresenceProfile that replaces the defaults entirely

    Raises:
        MissingGroup: A group has no row (or a row is duplicated)
        UnknownGroup: A row names a group that does not exist
        MalformedRow: The file is empty or a row has too many fields
        MissingHour: An hour column or value is missing
        ValueOutOfRange: A value is not a number in [0, 1]
    """
    try:
        frame = pd.read_csv(
            source, header=None, index_col=False, dtype=str, keep_default_na=False
        )
    except pd.errors.EmptyDataError:
        raise MalformedRow(1, "empty file") from None
    except pd.errors.ParserError as e:
        match = _PARSER_LINE.search(str(e))
        raise MalformedRow(int(match.group(1)) if match else 0, str(e)) from None
    columns = [str(column).strip() for column in frame.iloc[0]]
    for h, column in enumerate(HOUR_COLUMNS):
        if column not in columns:
            raise MissingHour("*", h)

    frame = frame.iloc[1:].reset_index(drop=True)
    frame.columns = columns
    rows: dict[str, list[float]] = {}
    for offset, record in enumerate(frame.to_dict(orient="records")):
        line = offset + 2
        name = str(record.get("group", "")).strip()
        if name not in GROUP_NAMES:
            raise UnknownGroup(name, line)
        if name in rows:
            raise MissingGroup(name)
        values = []
        for h, column in enumerate(HOUR_COLUMNS):
            raw = str(record[column]).strip()
            if not raw:
                raise MissingHour(name, h)
            try:
                value = float(raw)
            except ValueError:
                raise ValueOutOfRange(name, h, raw) from None
            if math.isnan(value) or not 0.0 <= value <= 1.0:
                raise ValueOutOfRange(name, h, value)
            values.append(value)
        rows[name] = values

    for name in GROUP_NAMES:
        if name not in rows:
            raise MissingGroup(name)

    logger.debug(f"Loaded presence profiles for {len(rows)} groups")
    return PresenceProfile([rows[name] for name in GROUP_NAMES])


def serialize_profiles(p: PresenceProfile) -> str:
    """Render a profile in the override CSV format, exact on reload."""
    frame = pd.DataFrame(p.as_array(), columns=list(HOUR_COLUMNS))
    frame.insert(0, "group", list(GROUP_NAMES))
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def dump_profiles(p: PresenceProfile, path: Union[str, Path]) -> None:
    Path(path).write_text(serialize_profiles(p), encoding="utf-8")
