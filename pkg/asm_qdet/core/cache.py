import json
import threading
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import structlog

from asm_qdet.exactalg.qlaurent import QLaurent
from asm_qdet.exactalg.serialize import qlaurent_from_json, qlaurent_to_json

logger: structlog.stdlib.BoundLogger = structlog.get_logger()

type CacheKey = tuple[int, int]


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    disk_hits: int = 0


class DeterminantCache:
    """
    Memo of symbolic d_{n,k} keyed by (n, k). Safe for concurrent readers and writers; with
    ``directory`` set, entries are also persisted as JSON files.
    """

    def __init__(self, directory: str | Path | None = None) -> None:
        self.directory = Path(directory) if directory else None
        self.storage: dict[CacheKey, QLaurent] = {}
        self.stats = CacheStats()
        self._lock = threading.RLock()

    def _path(self, key: CacheKey) -> Path | None:
        if self.directory is None:
            return None
        n, k = key
        return self.directory / f"d_{n}_{k}.json"

    def _load(self, key: CacheKey) -> QLaurent | None:
        path = self._path(key)
        if path is None or not path.is_file():
            return None
        try:
            return qlaurent_from_json(json.loads(path.read_text()))
        except (OSError, ValueError) as exc:
            logger.warning("Ignoring unreadable cache entry", path=str(path), error=str(exc))
            return None

    def _store(self, key: CacheKey, value: QLaurent) -> None:
        path = self._path(key)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(qlaurent_to_json(value), sort_keys=True))

    def get(self, key: CacheKey) -> QLaurent | None:
        with self._lock:
            if key in self.storage:
                self.stats.hits += 1
                return self.storage[key]
            value = self._load(key)
            if value is not None:
                self.stats.disk_hits += 1
                self.storage[key] = value
            return value

    def put(self, key: CacheKey, value: QLaurent) -> None:
        with self._lock:
            self.storage[key] = value
            self._store(key, value)

    def get_or_compute(self, key: CacheKey, compute: Callable[[], QLaurent]) -> QLaurent:
        cached = self.get(key)
        if cached is not None:
            logger.debug("Determinant cache hit", n=key[0], k=key[1])
            return cached
        with self._lock:
            self.stats.misses += 1
        logger.debug("Determinant cache miss", n=key[0], k=key[1])
        value = compute()
        with self._lock:
            # another thread may have finished first; both values are equal
            self.storage.setdefault(key, value)
            self._store(key, value)
            return self.storage[key]

    def clear(self) -> None:
        with self._lock:
            self.storage.clear()
            self.stats = CacheStats()

    def __len__(self) -> int:
        return len(self.storage)

    def __contains__(self, key: object) -> bool:
        return key in self.storage
