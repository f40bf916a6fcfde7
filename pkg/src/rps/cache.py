"""On-disk cache of solved propositions, keyed by a hash of spec, options and version."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from . import __version__

log = logging.getLogger(__name__)

ENV_VAR = "RPS_CACHE_DIR"


def default_cache_dir() -> Path:
    if os.environ.get(ENV_VAR):
        return Path(os.environ[ENV_VAR])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "rps"


def atomic_write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def spec_key(spec, opts=None) -> str:
    payload = {"spec": spec.to_dict(), "opts": opts.to_dict() if opts is not None else None, "version": __version__}
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


class PropositionCache:
    def __init__(self, directory: os.PathLike | None = None):
        self.dir = Path(directory) if directory is not None else default_cache_dir() / "propositions"

    def path(self, key):
        return self.dir / f"{key}.json"

    def store(self, key, prop):
        atomic_write_text(self.path(key), json.dumps(prop.to_dict(), sort_keys=True))

    def load(self, key):
        """The cached proposition, or None on a miss or an unreadable entry."""
        from .pipeline import Proposition

        path = self.path(key)
        if not path.exists():
            return None
        try:
            return Proposition.from_dict(json.loads(path.read_text(encoding="utf-8")))
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring corrupt cache entry %s: %s", path, exc)
            return None


def solve_cached(spec, opts=None, cache: PropositionCache | None = None):
    from .pipeline import SolveOptions, solve_instance

    opts = opts or SolveOptions()
    if cache is None:
        return solve_instance(spec, opts)
    key = spec_key(spec, opts)
    hit = cache.load(key)
    if hit is not None:
        return hit
    prop = solve_instance(spec, opts)
    cache.store(key, prop)
    return prop
