"""Tracing service logic: ingest with alerting, exact-match search, watches.

All state changes go through the journal store under one writer lock;
alert dispatch happens after the commit that records the (watch, trace)
pairs, so an alert can never fire twice for the same sighting.
"""

from __future__ import annotations

import logging
import threading
from datetime import datetime
from typing import Callable
from zoneinfo import ZoneInfo

from .geo import GeoProvider, StaticGeoProvider
from .models import (
    TraceRecord,
    WatchEntry,
    validate_email,
    validate_latitude,
    validate_longitude,
    validate_mobile,
    validate_plate,
)
from .notify import Notifier, OutboxNotifier
from .store import JournalStore

logger = logging.getLogger(__name__)


class TrackingService:
    def __init__(
        self,
        store: JournalStore,
        geo: GeoProvider | None = None,
        notifier: Notifier | None = None,
        timezone_name: str = "UTC",
        clock: Callable[[], datetime] | None = None,
    ):
        self.store = store
        self.geo = geo or StaticGeoProvider()
        self.notifier = notifier or OutboxNotifier("alerts.outbox")
        self.tz = ZoneInfo(timezone_name)
        self._clock = clock or (lambda: datetime.now(self.tz))
        self._lock = threading.RLock()

    def _now_string(self) -> str:
        stamp = self._clock()
        if stamp.tzinfo is None:
            stamp = stamp.replace(tzinfo=self.tz)
        return stamp.astimezone(self.tz).isoformat(sep=" ")

    def ingest_trace(self, number: str, camera_id: str) -> TraceRecord:
        """Persist a sighting, then alert every watcher of that vehicle."""
        plate = validate_plate(number)
        latitude, longitude, place = self.geo.locate(str(camera_id))
        validate_latitude(latitude)
        validate_longitude(longitude)
        with self._lock:
            trace = TraceRecord(
                id=len(self.store.traces) + 1,
                number=plate,
                latitude=latitude,
                longitude=longitude,
                place=place,
                time=self._now_string(),
                camera_id=str(camera_id),
            )
            matches = [w for w in self.store.watches if w.vehicle == plate]
            self.store.append_trace(trace, [w.id for w in matches])
        for watch in matches:
            outcome = self.notifier.send_alert(watch, trace)
            if not outcome.ok:
                logger.warning("alert delivery failed for watch %s: %s", watch.id, outcome.detail)
        return trace

    def search(self, number: str) -> list[TraceRecord]:
        """All sightings of a plate, most recent first."""
        plate = validate_plate(number)
        with self._lock:
            hits = [t for t in self.store.traces if t.number == plate]
        hits.sort(key=lambda t: (datetime.fromisoformat(t.time), t.id), reverse=True)
        return hits

    def register_watch(self, vehicle: str, email: str, mobile: str, details: str) -> WatchEntry:
        plate = validate_plate(vehicle, field="vehicle")
        email = validate_email(email)
        mobile = validate_mobile(mobile)
        with self._lock:
            entry = WatchEntry(
                id=len(self.store.watches) + 1,
                vehicle=plate,
                email=email,
                mobile=mobile,
                details=str(details),
                created_at=self._now_string(),
            )
            self.store.append_watch(entry)
        return entry

    def list_watches(self) -> list[WatchEntry]:
        with self._lock:
            return list(self.store.watches)
