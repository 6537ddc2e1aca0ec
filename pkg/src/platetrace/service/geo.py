"""Camera location providers.

The default maps camera ids to fixed coordinates from configuration. An
HTTP geo-IP client exists behind the same interface for deployments whose
camera ids are IP addresses, but it is never wired in by default.
"""

from __future__ import annotations

from pathlib import Path
from typing import Protocol

Location = tuple[float, float, str]  # latitude, longitude, place label

DEFAULT_LOCATION: Location = (12.9333, 79.1333, "Vellore TN IN")


class GeoProvider(Protocol):
    def locate(self, camera_id: str) -> Location: ...


class StaticGeoProvider:
    """camera_id -> (lat, lon, label) lookup with a configurable fallback."""

    def __init__(self, mapping: dict[str, Location] | None = None, default: Location = DEFAULT_LOCATION):
        self.mapping = dict(mapping or {})
        self.default = default

    def locate(self, camera_id: str) -> Location:
        return self.mapping.get(camera_id, self.default)

    @classmethod
    def from_file(cls, path: str | Path) -> "StaticGeoProvider":
        """Parse `camera_id=lat,lon,label` lines; '#' starts a comment."""
        mapping: dict[str, Location] = {}
        for raw in Path(path).read_text().splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            camera_id, _, rest = line.partition("=")
            lat_s, lon_s, label = rest.split(",", 2)
            mapping[camera_id.strip()] = (float(lat_s), float(lon_s), label.strip())
        return cls(mapping)


class HttpGeoProvider:
    """Geo-IP lookup treating the camera id as an IP address.

    Results are cached per camera id so a provider stays deterministic
    within a process lifetime even if the remote answer drifts.
    """

    def __init__(self, base_url: str, fetch=None, default: Location = DEFAULT_LOCATION):
        self.base_url = base_url.rstrip("/")
        self._fetch = fetch or self._http_fetch
        self.default = default
        self._cache: dict[str, Location] = {}

    def _http_fetch(self, url: str) -> dict:
        import requests

        resp = requests.get(url, timeout=10)
        resp.raise_for_status()
        return resp.json()

    def locate(self, camera_id: str) -> Location:
        if camera_id not in self._cache:
            try:
                data = self._fetch(f"{self.base_url}/json/{camera_id}")
                label = " ".join(
                    str(data[k]) for k in ("city", "region_code", "country_code") if data.get(k)
                )
                self._cache[camera_id] = (
                    float(data["latitude"]),
                    float(data["longitude"]),
                    label or "unknown",
                )
            except Exception:
                self._cache[camera_id] = self.default
        return self._cache[camera_id]
