"""Record types and field validation for the tracing service."""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass

PLATE_RE = re.compile(r"^[A-Z0-9]+$")
MOBILE_RE = re.compile(r"^[0-9]+$")


class ValidationError(ValueError):
    """A request field failed validation; carries the field name."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


def normalize_plate(raw: str) -> str:
    """Uppercase and strip all whitespace ('tn 23 al 0322' -> 'TN23AL0322')."""
    return "".join(str(raw).split()).upper()


def validate_plate(raw: str, field: str = "number") -> str:
    number = normalize_plate(raw)
    if not PLATE_RE.fullmatch(number):
        raise ValidationError(field, f"must match [A-Z0-9]+ after normalization, got {raw!r}")
    return number


def validate_email(raw: str) -> str:
    email = str(raw).strip()
    local, sep, domain = email.partition("@")
    if not sep or not local or not domain or "@" in domain:
        raise ValidationError("email", f"needs exactly one '@' with non-empty parts, got {raw!r}")
    return email


def validate_mobile(raw: str) -> str:
    mobile = str(raw).strip()
    if not MOBILE_RE.fullmatch(mobile):
        raise ValidationError("mobile", f"must be a digit string, got {raw!r}")
    return mobile


def validate_latitude(value: float) -> float:
    if not -90.0 <= value <= 90.0:
        raise ValidationError("latitude", f"out of range: {value}")
    return float(value)


def validate_longitude(value: float) -> float:
    if not -180.0 <= value <= 180.0:
        raise ValidationError("longitude", f"out of range: {value}")
    return float(value)


@dataclass(frozen=True)
class TraceRecord:
    """One sighting: number, location, timestamp, camera."""

    id: int
    number: str
    latitude: float
    longitude: float
    place: str
    time: str  # 'YYYY-MM-DD HH:MM:SS+HH:MM', local offset included
    camera_id: str

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TraceRecord":
        return cls(**d)


@dataclass(frozen=True)
class WatchEntry:
    """A registered request to be alerted when a vehicle is sighted."""

    id: int
    vehicle: str
    email: str
    mobile: str
    details: str
    created_at: str

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "WatchEntry":
        return cls(**d)
