"""Watch-file poller: ship recognized plates to the tracking service.

Every poll reads the complete lines of the watch file, POSTs one trace
per valid line, and only after the whole batch is acknowledged removes
those bytes from the file. A failed batch leaves the file untouched, so
delivery is at-least-once and duplicates are legitimate sightings.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import watchfile
from .service.models import PLATE_RE, normalize_plate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IngestConfig:
    watch_path: str
    endpoint: str
    camera_id: str = "cam-0"
    interval: float = 10.0
    retry_max: int = 3
    backoff_base: float = 0.5
    auth_token: str | None = None

    def __post_init__(self) -> None:
        if self.interval <= 0:
            raise ValueError("interval must be > 0")
        if self.retry_max < 0:
            raise ValueError("retry_max must be >= 0")

    @property
    def traces_url(self) -> str:
        base = self.endpoint.rstrip("/")
        return base if base.endswith("/traces") else base + "/traces"


def load_config_file(path: str) -> IngestConfig:
    """Parse a key=value config file; keys mirror IngestConfig fields."""
    values: dict = {}
    casts = {"interval": float, "retry_max": int, "backoff_base": float}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        values[key] = casts.get(key, str)(value)
    return IngestConfig(**values)


class Ingester:
    """Periodic poller with pluggable transport and clock (for tests)."""

    def __init__(
        self,
        cfg: IngestConfig,
        post: Callable[[dict], bool] | None = None,
        sleep: Callable[[float], None] = time.sleep,
        wait: Callable[[threading.Event, float], None] | None = None,
    ):
        self.cfg = cfg
        self._post = post or self._http_post
        self._sleep = sleep
        self._wait = wait or (lambda stop, seconds: stop.wait(seconds))
        self.skipped_total = 0

    def _http_post(self, payload: dict) -> bool:
        import requests

        headers = {}
        if self.cfg.auth_token:
            headers["Authorization"] = f"Bearer {self.cfg.auth_token}"
        try:
            resp = requests.post(self.cfg.traces_url, json=payload, headers=headers, timeout=10)
        except requests.RequestException as exc:
            logger.warning("POST failed: %s", exc)
            return False
        if 200 <= resp.status_code < 300:
            return True
        if 400 <= resp.status_code < 500:
            # permanent rejection: retrying the same payload cannot succeed
            logger.error("service rejected %r: HTTP %s", payload, resp.status_code)
            self.skipped_total += 1
            return True
        logger.warning("POST returned HTTP %s", resp.status_code)
        return False

    def _post_with_retry(self, payload: dict) -> bool:
        for attempt in range(self.cfg.retry_max + 1):
            if self._post(payload):
                return True
            if attempt < self.cfg.retry_max:
                self._sleep(self.cfg.backoff_base * (2.0**attempt))
        return False

    def poll_once(self) -> int:
        """Ship one batch; returns the number of records delivered.

        The file is truncated (by exactly the consumed bytes) only when
        every valid line in the batch was acknowledged.
        """
        lines, nbytes = watchfile.read_batch(self.cfg.watch_path)
        if not lines:
            return 0
        shipped = 0
        for raw in lines:
            if not raw.strip():
                continue
            number = normalize_plate(raw)
            if not PLATE_RE.fullmatch(number):
                logger.warning("skipping malformed line %r", raw)
                self.skipped_total += 1
                continue
            if not self._post_with_retry({"number": number, "camera_id": self.cfg.camera_id}):
                logger.warning("batch aborted; %d of %d shipped, file left intact", shipped, len(lines))
                return shipped
            shipped += 1
        watchfile.discard_prefix(self.cfg.watch_path, nbytes)
        return shipped

    def run_loop(self, stop: threading.Event | None = None) -> None:
        """Poll every cfg.interval seconds until `stop` is set.

        An in-flight poll always completes before shutdown; without an
        externally supplied event, SIGINT/SIGTERM trigger a clean stop.
        """
        stop = stop if stop is not None else self._signal_event()
        while not stop.is_set():
            self.poll_once()
            self._wait(stop, self.cfg.interval)

    @staticmethod
    def _signal_event() -> threading.Event:
        import signal

        stop = threading.Event()
        for sig in (signal.SIGINT, signal.SIGTERM):
            signal.signal(sig, lambda *_: stop.set())
        return stop


def poll_once(cfg: IngestConfig) -> int:
    return Ingester(cfg).poll_once()


def run_loop(cfg: IngestConfig, stop: threading.Event | None = None) -> None:
    Ingester(cfg).run_loop(stop)
