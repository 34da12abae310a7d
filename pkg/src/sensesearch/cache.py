"""LRU + TTL cache for search responses.

Keys canonicalize the request: whitespace-folded lowercase query, sorted
provider set, result depth, expansion strategy and the requesting user (the
history bias makes cluster order user-specific, so entries must not leak
across users). Values are opaque to the cache; the service stores the
serializable response payload. Everything is in memory, with an optional
best-effort JSON snapshot for restarts.
"""

import json
import threading
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .clock import SYSTEM_CLOCK
from .expansion import ExpansionStrategy, normalize_query_text

DEFAULT_TTL_MS = 300_000
DEFAULT_CAPACITY = 1024
SNAPSHOT_VERSION = 1


@dataclass(frozen=True)
class CacheKey:
    normalized_query: str
    provider_set: tuple  # provider ids, sorted ascending
    k: int
    strategy: ExpansionStrategy
    user_id: str = ""

    def __post_init__(self):
        if list(self.provider_set) != sorted(self.provider_set):
            raise ValueError("provider_set must be sorted ascending")

    @classmethod
    def build(cls, query: str, providers, k: int, strategy: ExpansionStrategy, user_id: str = "") -> "CacheKey":
        """Canonicalize raw request parts; provider order does not matter."""
        return cls(
            normalized_query=normalize_query_text(query),
            provider_set=tuple(sorted(providers)),
            k=k,
            strategy=strategy,
            user_id=user_id,
        )


class ResponseCache:
    """Thread-safe LRU with per-entry expiry.

    get refreshes recency; put inserts as most recent and evicts the least
    recently used entries beyond capacity. Expired entries act as misses and
    are dropped when touched.
    """

    def __init__(self, capacity: int = DEFAULT_CAPACITY, ttl_ms: int = DEFAULT_TTL_MS, *, clock=SYSTEM_CLOCK):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        if ttl_ms < 1:
            raise ValueError(f"ttl_ms must be >= 1, got {ttl_ms}")
        self.capacity = capacity
        self.default_ttl_ms = ttl_ms
        self._clock = clock
        self._lock = threading.Lock()
        self._entries: "OrderedDict[CacheKey, tuple[int, Any]]" = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key: CacheKey):
        """Return the stored value, or None past its TTL or never stored."""
        now = self._clock.now_ms()
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                self.misses += 1
                return None
            expires_ms, value = entry
            if now >= expires_ms:
                del self._entries[key]
                self.misses += 1
                return None
            self._entries.move_to_end(key)
            self.hits += 1
            return value

    def put(self, key: CacheKey, value, ttl_ms: int | None = None) -> None:
        ttl = self.default_ttl_ms if ttl_ms is None else ttl_ms
        if ttl < 1:
            raise ValueError(f"ttl_ms must be >= 1, got {ttl}")
        expires_ms = self._clock.now_ms() + ttl
        with self._lock:
            self._entries[key] = (expires_ms, value)
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def save_snapshot(self, path: str | Path) -> bool:
        """Write unexpired entries to a versioned JSON file; best-effort."""
        now = self._clock.now_ms()
        with self._lock:
            entries = [
                {
                    "query": key.normalized_query,
                    "providers": list(key.provider_set),
                    "k": key.k,
                    "strategy": key.strategy.value,
                    "user": key.user_id,
                    "expires_ms": expires_ms,
                    "value": value,
                }
                for key, (expires_ms, value) in self._entries.items()
                if expires_ms > now
            ]
        document = {"version": SNAPSHOT_VERSION, "entries": entries}
        try:
            Path(path).write_text(json.dumps(document, ensure_ascii=False), encoding="utf-8")
            return True
        except (OSError, TypeError, ValueError):
            return False

    def load_snapshot(self, path: str | Path) -> int:
        """Re-insert entries from a snapshot; unreadable files load nothing."""
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return 0
        if not isinstance(document, dict) or document.get("version") != SNAPSHOT_VERSION:
            return 0
        now = self._clock.now_ms()
        loaded = 0
        for record in document.get("entries", []):
            try:
                key = CacheKey(
                    normalized_query=record["query"],
                    provider_set=tuple(record["providers"]),
                    k=int(record["k"]),
                    strategy=ExpansionStrategy(record["strategy"]),
                    user_id=record.get("user", ""),
                )
                expires_ms = int(record["expires_ms"])
                value = record["value"]
            except (KeyError, TypeError, ValueError):
                continue
            if expires_ms <= now:
                continue
            with self._lock:
                self._entries[key] = (expires_ms, value)
                self._entries.move_to_end(key)
                while len(self._entries) > self.capacity:
                    self._entries.popitem(last=False)
            loaded += 1
        return loaded
