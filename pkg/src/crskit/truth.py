"""Three-valued truth for certified decisions."""

from __future__ import annotations

import enum


class Truth(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    @classmethod
    def of(cls, value) -> "Truth":
        if isinstance(value, Truth):
            return value
        if value is None:
            return cls.UNKNOWN
        return cls.TRUE if value else cls.FALSE

    def __bool__(self):
        raise TypeError("Truth is three-valued; compare against Truth.TRUE explicitly")

    def __str__(self):
        return self.value


def all_of(values) -> Truth:
    """Conjunction where FALSE dominates UNKNOWN."""
    seen_unknown = False
    for v in values:
        v = Truth.of(v)
        if v is Truth.FALSE:
            return Truth.FALSE
        if v is Truth.UNKNOWN:
            seen_unknown = True
    return Truth.UNKNOWN if seen_unknown else Truth.TRUE
