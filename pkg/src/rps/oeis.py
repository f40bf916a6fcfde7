"""Best-effort OEIS lookups with an on-disk response cache."""

from __future__ import annotations

import hashlib
import json
import logging
import threading
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path

from .cache import atomic_write_text, default_cache_dir

log = logging.getLogger(__name__)

SEARCH_URL = "https://oeis.org/search?fmt=json&q={query}"
MIN_INTERVAL = 1.0

_lock = threading.Lock()
_last_request = 0.0


@dataclass(frozen=True)
class OEISMatch:
    sequence_id: str
    matched_prefix_length: int
    name: str = ""


@dataclass(frozen=True)
class OEISResult:
    query: str
    available: bool
    matches: tuple = field(default_factory=tuple)
    detail: str = ""

    def to_dict(self):
        return {
            "query": self.query,
            "available": self.available,
            "matches": [{"sequenceId": m.sequence_id, "matchedPrefixLength": m.matched_prefix_length, "name": m.name}
                        for m in self.matches],
            "detail": self.detail,
        }


def _http_get(url, timeout=15.0) -> str:
    global _last_request
    with _lock:
        wait = MIN_INTERVAL - (time.monotonic() - _last_request)
        if wait > 0:
            time.sleep(wait)
        try:
            req = urllib.request.Request(url, headers={"User-Agent": "rps-words/0.1 (sequence cross-check)"})
            with urllib.request.urlopen(req, timeout=timeout) as resp:
                return resp.read().decode("utf-8")
        finally:
            _last_request = time.monotonic()


def matched_prefix(terms, data) -> int:
    """Length of the longest prefix of ``terms`` occurring contiguously in ``data``."""
    best = 0
    for start in range(len(data)):
        k = 0
        while k < len(terms) and start + k < len(data) and data[start + k] == terms[k]:
            k += 1
        best = max(best, k)
    return best


def parse_response(text, terms):
    payload = json.loads(text)
    if isinstance(payload, dict):
        payload = payload.get("results") or []
    matches = []
    for entry in payload or []:
        data = [int(x) for x in str(entry.get("data", "")).split(",") if x.strip()]
        matches.append(OEISMatch(f"A{int(entry['number']):06d}", matched_prefix(list(terms), data), entry.get("name", "")))
    return tuple(matches)


def oeis_lookup(terms, offline=False, cache_dir=None, fetch=_http_get) -> OEISResult:
    terms = [int(x) for x in terms]
    query = ",".join(str(x) for x in terms)
    cdir = Path(cache_dir) if cache_dir is not None else default_cache_dir() / "oeis"
    path = cdir / (hashlib.sha256(query.encode()).hexdigest() + ".json")
    if path.exists():
        try:
            return OEISResult(query, True, parse_response(path.read_text(encoding="utf-8"), terms), "cached")
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring corrupt OEIS cache entry %s: %s", path, exc)
    if offline:
        return OEISResult(query, False, (), "offline and not cached")
    try:
        text = fetch(SEARCH_URL.format(query=urllib.parse.quote(query, safe=",")))
        matches = parse_response(text, terms)
    except (OSError, urllib.error.URLError, ValueError, KeyError, TypeError) as exc:
        return OEISResult(query, False, (), f"lookup unavailable: {exc}")
    atomic_write_text(path, text)
    return OEISResult(query, True, matches, "live")
