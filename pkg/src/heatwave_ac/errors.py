"""
Exception hierarchy for heatwave-ac.

Every input or configuration problem is a ``ValidationError`` (exit code 1),
post-condition failures are ``InvariantViolation`` (exit code 3). I/O problems
are left as the builtin ``OSError`` (exit code 2).
"""

import logging
from typing import Any, NoReturn

logger = logging.getLogger(__name__)


class HeatwaveACError(Exception):
    """Base class for all heatwave-ac errors."""

    def __init__(self, message: str, **fields: Any):
        super().__init__(message)
        self.fields = fields

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable form used by the validation report."""
        return {"error": type(self).__name__, **self.fields, "message": str(self)}


class ValidationError(HeatwaveACError, ValueError):
    """Input data or configuration failed validation."""


class InvariantViolation(HeatwaveACError, RuntimeError):
    """A result broke a property that must hold on every run."""


class ConfigurationError(ValidationError):
    def __init__(self, reason: str):
        super().__init__(reason, reason=reason)


# Distribution matrix


class RowNotStochastic(ValidationError):
    def __init__(self, size: str, total: float):
        super().__init__(
            f"matrix row for household size {size} sums to {total!r}, expected 1",
            size=size,
            total=total,
        )


class EntryOutOfRange(ValidationError):
    def __init__(self, size: str, group: str, value: float):
        super().__init__(
            f"matrix entry ({size}, {group}) = {value!r} is outside [0, 1]",
            size=size,
            group=group,
            value=value,
        )


# Presence profiles


class MissingGroup(ValidationError):
    def __init__(self, group: str):
        super().__init__(f"presence profile has no row for group {group}", group=group)


class UnknownGroup(ValidationError):
    def __init__(self, group: str, line: int):
        super().__init__(
            f"line {line}: unknown demographic group {group!r}", group=group, line=line
        )


class MissingHour(ValidationError):
    def __init__(self, group: str, hour: int):
        super().__init__(
            f"presence profile for {group} has no value for hour {hour}",
            group=group,
            hour=hour,
        )


class ValueOutOfRange(ValidationError):
    def __init__(self, group: str, hour: int, value: Any):
        super().__init__(
            f"presence value for ({group}, h{hour}) = {value!r} is not in [0, 1]",
            group=group,
            hour=hour,
            value=value,
        )


# Census and weather files


class MalformedRow(ValidationError):
    def __init__(self, line: int, reason: str = ""):
        message = f"line {line}: malformed row"
        if reason:
            message = f"{message} ({reason})"
        super().__init__(message, line=line, reason=reason)


class DuplicateGridId(ValidationError):
    def __init__(self, grid_id: str):
        super().__init__(f"duplicate grid_id {grid_id!r}", grid_id=grid_id)


class InvalidCoordinate(ValidationError):
    def __init__(self, line: int, lat: Any = None, lon: Any = None):
        super().__init__(
            f"line {line}: invalid coordinate ({lat}, {lon})",
            line=line,
            lat=lat,
            lon=lon,
        )


class MissingHours(ValidationError):
    def __init__(self, station: str, hours: list[int]):
        super().__init__(
            f"station {station} is missing hours {hours}",
            station=station,
            hours=list(hours),
        )


class MalformedTimestamp(ValidationError):
    def __init__(self, line: int, value: str):
        super().__init__(
            f"line {line}: malformed timestamp {value!r}", line=line, value=value
        )


class DuplicateReading(ValidationError):
    def __init__(self, station: str, hour: int):
        super().__init__(
            f"station {station} has more than one reading for hour {hour}",
            station=station,
            hour=hour,
        )


# Run configuration


class UnknownKey(ValidationError):
    def __init__(self, path: str):
        super().__init__(f"unknown configuration key {path!r}", path=path)


class InvalidValue(ValidationError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"invalid value for {path!r}: {reason}", path=path, reason=reason)


# Aggregation and statistics


class DuplicateCellId(ValidationError):
    def __init__(self, cell_id: str):
        super().__init__(f"cell {cell_id!r} appears more than once", cell_id=cell_id)


class EmptyInput(ValidationError):
    def __init__(self, what: str):
        super().__init__(f"no {what} to summarize", what=what)


class NonPositiveBaseline(ValidationError):
    def __init__(self, baseline: float):
        super().__init__(
            f"baseline load must be positive, got {baseline!r}", baseline=baseline
        )


def handle_error(error: Exception, operation: str) -> NoReturn:
    """Log a failed pipeline stage and re-raise the original error.

    Args:
        error: The exception that was raised
        operation: Description of the operation being performed

    Raises:
        The original exception, unchanged, so callers can map it to an exit code
    """
    logger.error(f"Error during {operation}: {error}")
    raise error
