"""Alert delivery adapters.

The default appends alert records to an outbox file (one JSON object per
line), which keeps delivery observable and testable. An SMTP adapter is
available for real mail-outs.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from .models import TraceRecord, WatchEntry


@dataclass(frozen=True)
class DeliveryOutcome:
    ok: bool
    detail: str = ""


class Notifier(Protocol):
    def send_alert(self, entry: WatchEntry, trace: TraceRecord) -> DeliveryOutcome: ...


def alert_message(entry: WatchEntry, trace: TraceRecord) -> str:
    return (
        f"Vehicle Traced ! {trace.number} seen at "
        f"{trace.latitude} {trace.longitude} {trace.place} on {trace.time}."
    )


class OutboxNotifier:
    """Append one JSON line per alert to an outbox file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def send_alert(self, entry: WatchEntry, trace: TraceRecord) -> DeliveryOutcome:
        record = {
            "to": entry.email,
            "watch_id": entry.id,
            "trace_id": trace.id,
            "number": trace.number,
            "location": f"{trace.latitude} {trace.longitude} {trace.place}",
            "time": trace.time,
            "message": alert_message(entry, trace),
        }
        with self._lock, open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")
        return DeliveryOutcome(ok=True, detail=str(self.path))


class SmtpNotifier:
    """Plain SMTP mail-out; host/port/sender come from configuration."""

    def __init__(self, host: str, port: int = 25, sender: str = "alerts@platetrace.local"):
        self.host = host
        self.port = port
        self.sender = sender

    def send_alert(self, entry: WatchEntry, trace: TraceRecord) -> DeliveryOutcome:
        import smtplib
        from email.message import EmailMessage

        msg = EmailMessage()
        msg["Subject"] = "Vehicle Traced !"
        msg["From"] = self.sender
        msg["To"] = entry.email
        msg.set_content(alert_message(entry, trace))
        try:
            with smtplib.SMTP(self.host, self.port, timeout=10) as smtp:
                smtp.send_message(msg)
        except OSError as exc:
            return DeliveryOutcome(ok=False, detail=str(exc))
        return DeliveryOutcome(ok=True)
