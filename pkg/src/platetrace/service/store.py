"""Embedded single-file persistence: append-only journal plus snapshots.

Journal format (documented contract):

* The journal file is a sequence of records, each a 4-byte big-endian
  payload length followed by that many bytes of UTF-8 JSON.
* Every record carries a monotonically increasing ``seq``; the op is
  either ``{"seq", "op": "trace", "trace": {...}, "alerts": [watch ids]}``
  or ``{"seq", "op": "watch", "watch": {...}}``. Alert dispatch decisions
  commit atomically with the trace that caused them.
* A snapshot file (``<journal>.snapshot``) holds the full state up to its
  ``seq``; it is written to a temp file and atomically renamed, after
  which the journal is truncated. Replay skips journal records whose seq
  is not newer than the snapshot.
* An interrupted write can leave a truncated final record; recovery stops
  at the first incomplete record and trims it off.

Writes are flushed and fsynced before an operation is acknowledged, so a
killed process never loses acknowledged state.
"""

from __future__ import annotations

import json
import os
import struct
import threading
from pathlib import Path

from .models import TraceRecord, WatchEntry

_LEN = struct.Struct(">I")


class JournalStore:
    """Crash-safe state holder for traces, watches, and the alert log."""

    def __init__(self, path: str | os.PathLike, snapshot_every: int = 1000, fsync: bool = True):
        self.path = Path(path)
        self.snapshot_path = self.path.with_name(self.path.name + ".snapshot")
        self.snapshot_every = snapshot_every
        self._fsync = fsync
        self._lock = threading.Lock()

        self.traces: list[TraceRecord] = []
        self.watches: list[WatchEntry] = []
        self.alerts: list[tuple[int, int]] = []  # (watch_id, trace_id)
        self.seq = 0
        self._ops_since_snapshot = 0

        self._recover()
        self._fh = open(self.path, "ab")

    # -- recovery ---------------------------------------------------------

    def _apply(self, record: dict) -> None:
        if record["op"] == "trace":
            trace = TraceRecord.from_dict(record["trace"])
            self.traces.append(trace)
            for watch_id in record["alerts"]:
                self.alerts.append((watch_id, trace.id))
        elif record["op"] == "watch":
            self.watches.append(WatchEntry.from_dict(record["watch"]))
        else:
            raise ValueError(f"unknown journal op {record['op']!r}")
        self.seq = record["seq"]

    def _recover(self) -> None:
        if self.snapshot_path.exists():
            snap = json.loads(self.snapshot_path.read_text())
            self.seq = snap["seq"]
            self.traces = [TraceRecord.from_dict(t) for t in snap["traces"]]
            self.watches = [WatchEntry.from_dict(w) for w in snap["watches"]]
            self.alerts = [tuple(a) for a in snap["alerts"]]
        if not self.path.exists():
            return
        data = self.path.read_bytes()
        offset = 0
        valid_end = 0
        while offset + _LEN.size <= len(data):
            (length,) = _LEN.unpack_from(data, offset)
            if offset + _LEN.size + length > len(data):
                break  # truncated tail from an interrupted write
            payload = data[offset + _LEN.size : offset + _LEN.size + length]
            try:
                record = json.loads(payload)
            except ValueError:
                break
            if record["seq"] > self.seq:
                self._apply(record)
            offset += _LEN.size + length
            valid_end = offset
        if valid_end < len(data):
            with open(self.path, "r+b") as fh:
                fh.truncate(valid_end)

    # -- appends ----------------------------------------------------------

    def _write(self, record: dict) -> None:
        payload = json.dumps(record, separators=(",", ":")).encode("utf-8")
        self._fh.write(_LEN.pack(len(payload)) + payload)
        self._fh.flush()
        if self._fsync:
            os.fsync(self._fh.fileno())

    def _maybe_snapshot(self) -> None:
        self._ops_since_snapshot += 1
        if self._ops_since_snapshot >= self.snapshot_every:
            self._snapshot_locked()

    def append_trace(self, trace: TraceRecord, alert_watch_ids: list[int]) -> None:
        with self._lock:
            self.seq += 1
            self._write(
                {"seq": self.seq, "op": "trace", "trace": trace.to_dict(), "alerts": alert_watch_ids}
            )
            self.traces.append(trace)
            for watch_id in alert_watch_ids:
                self.alerts.append((watch_id, trace.id))
            self._maybe_snapshot()

    def append_watch(self, watch: WatchEntry) -> None:
        with self._lock:
            self.seq += 1
            self._write({"seq": self.seq, "op": "watch", "watch": watch.to_dict()})
            self.watches.append(watch)
            self._maybe_snapshot()

    # -- snapshots ---------------------------------------------------------

    def _snapshot_locked(self) -> None:
        snap = {
            "seq": self.seq,
            "traces": [t.to_dict() for t in self.traces],
            "watches": [w.to_dict() for w in self.watches],
            "alerts": [list(a) for a in self.alerts],
        }
        tmp = self.snapshot_path.with_name(self.snapshot_path.name + ".tmp")
        with open(tmp, "w") as fh:
            fh.write(json.dumps(snap))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.snapshot_path)
        self._fh.truncate(0)
        self._fh.seek(0)
        self._fh.flush()
        if self._fsync:
            os.fsync(self._fh.fileno())
        self._ops_since_snapshot = 0

    def snapshot(self) -> None:
        with self._lock:
            self._snapshot_locked()

    def close(self) -> None:
        with self._lock:
            self._fh.close()
