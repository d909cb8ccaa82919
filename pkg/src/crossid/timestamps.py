"""Six-component timestamps and the accepted input grammars.

All times are naive (no timezone). The canonical serialization is the
ISO-like ``YYYY-MM-DDThh:mm:ss`` form used by the pair-file format; the
six-component tuple form ``{yyyy, mm, dd, hh, mm, ss}`` and the
``hh:mm:ss AM/PM, DD Month, YYYY`` form are accepted on input.
"""

from __future__ import annotations

import datetime as _dt
import re
from dataclasses import dataclass


class TimestampError(ValueError):
    """Malformed or calendar-invalid timestamp input."""


_ISO_RE = re.compile(r"^(\d{4})-(\d{2})-(\d{2})[T ](\d{2}):(\d{2}):(\d{2})$")
_TUPLE_RE = re.compile(
    r"^\{?\s*(\d{1,4})\s*,\s*(\d{1,2})\s*,\s*(\d{1,2})\s*,"
    r"\s*(\d{1,2})\s*,\s*(\d{1,2})\s*,\s*(\d{1,2})\s*\}?$"
)
_AMPM_RE = re.compile(
    r"^(\d{1,2}):(\d{2}):(\d{2})\s*(AM|PM)\s*,\s*(\d{1,2})\s+([A-Za-z]+)\s*,\s*(\d{4})$",
    re.IGNORECASE,
)

_MONTHS = {
    name.lower(): i
    for i, name in enumerate(
        [
            "January", "February", "March", "April", "May", "June",
            "July", "August", "September", "October", "November", "December",
        ],
        start=1,
    )
}

SECONDS_PER_DAY = 86400.0


@dataclass(frozen=True, order=True)
class Timestamp:
    """A calendar-valid naive timestamp with second resolution."""

    year: int
    month: int
    day: int
    hour: int
    minute: int
    second: int

    def __post_init__(self):
        _validate_components(
            self.year, self.month, self.day, self.hour, self.minute, self.second
        )

    def to_datetime(self) -> _dt.datetime:
        return _dt.datetime(
            self.year, self.month, self.day, self.hour, self.minute, self.second
        )

    @classmethod
    def from_datetime(cls, dt: _dt.datetime) -> "Timestamp":
        return cls(dt.year, dt.month, dt.day, dt.hour, dt.minute, dt.second)

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.year, self.month, self.day, self.hour, self.minute, self.second)

    def isoformat(self) -> str:
        return (
            f"{self.year:04d}-{self.month:02d}-{self.day:02d}"
            f"T{self.hour:02d}:{self.minute:02d}:{self.second:02d}"
        )

    def days_since(self, origin: "Timestamp") -> float:
        """Fractional days elapsed since ``origin`` (may be negative)."""
        delta = self.to_datetime() - origin.to_datetime()
        return delta.total_seconds() / SECONDS_PER_DAY


def _validate_components(year, month, day, hour, minute, second):
    if not 1 <= month <= 12:
        raise TimestampError(f"month out of range: {month}")
    if not 0 <= hour <= 23:
        raise TimestampError(f"hour out of range: {hour}")
    if not 0 <= minute <= 59:
        raise TimestampError(f"minute out of range: {minute}")
    if not 0 <= second <= 59:
        raise TimestampError(f"second out of range: {second}")
    try:
        _dt.datetime(year, month, day)
    except ValueError:
        raise TimestampError(f"day out of range for {year:04d}-{month:02d}: {day}")


def parse_timestamp(raw: str) -> Timestamp:
    """Parse any accepted input form into a canonical :class:`Timestamp`.

    Accepted grammars: ``YYYY-MM-DDThh:mm:ss``, the six-component tuple
    ``{yyyy, mm, dd, hh, mm, ss}``, and ``hh:mm:ss AM/PM, DD Month, YYYY``.
    """
    if not isinstance(raw, str):
        raise TimestampError(f"timestamp must be a string, got {type(raw).__name__}")
    text = raw.strip()

    m = _ISO_RE.match(text)
    if m:
        y, mo, d, h, mi, s = (int(g) for g in m.groups())
        return Timestamp(y, mo, d, h, mi, s)

    m = _TUPLE_RE.match(text)
    if m:
        y, mo, d, h, mi, s = (int(g) for g in m.groups())
        return Timestamp(y, mo, d, h, mi, s)

    m = _AMPM_RE.match(text)
    if m:
        h12, mi, s, ampm, d, month_name, y = m.groups()
        month = _MONTHS.get(month_name.lower())
        if month is None:
            raise TimestampError(f"unknown month name: {month_name!r}")
        hour = int(h12) % 12
        if ampm.upper() == "PM":
            hour += 12
        return Timestamp(int(y), month, int(d), hour, int(mi), int(s))

    raise TimestampError(f"unrecognized timestamp format: {raw!r}")
