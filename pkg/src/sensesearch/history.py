"""Per-user selection history and the cluster-order bias it drives.

Every time a user picks a cluster, the cluster's category is appended to an
append-only JSON Lines log. At search time each cluster is weighted by the
user's past selections of its category, decayed exponentially with a
seven-day half-life, and clusters are stably re-sorted by weight. No
history, or clusters without categories, leave the order untouched.
"""

import json
import threading
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Sequence

from .aggregator import Cluster
from .clock import SYSTEM_CLOCK
from .errors import PersistenceError

DEFAULT_HALF_LIFE_MS = 7 * 24 * 60 * 60 * 1000
CATEGORY_SAMPLE_SIZE = 10


@dataclass(frozen=True)
class HistoryEntry:
    user_id: str
    query: str
    chosen_category: str
    timestamp_ms: int

    def __post_init__(self):
        if not self.user_id:
            raise ValueError("user_id must be nonempty")
        if not self.chosen_category:
            raise ValueError("chosen_category must be nonempty")
        if self.timestamp_ms <= 0:
            raise ValueError(f"timestamp_ms must be positive, got {self.timestamp_ms}")


class HistoryStore:
    """Append-only store of HistoryEntry, in memory and optionally on disk.

    With a path, entries already in the file are loaded eagerly and each
    append is written through with a flush, so concurrent readers in other
    processes see a prefix of the log. Appends and reads are lock-protected.
    """

    def __init__(self, path: str | Path | None = None):
        self._lock = threading.Lock()
        self._entries: list[HistoryEntry] = []
        self._path = Path(path) if path is not None else None
        if self._path is not None and self._path.exists():
            self._load()

    def _load(self):
        try:
            text = self._path.read_text(encoding="utf-8")
        except OSError as exc:
            raise PersistenceError(f"cannot read history file {self._path}: {exc}") from exc
        for line in text.splitlines():
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                entry = HistoryEntry(
                    user_id=record["user_id"],
                    query=record.get("query", ""),
                    chosen_category=record["chosen_category"],
                    timestamp_ms=int(record["timestamp_ms"]),
                )
            except (ValueError, KeyError, TypeError):
                continue  # torn or foreign line; the log is best-effort on read
            self._entries.append(entry)

    def append(self, entry: HistoryEntry) -> None:
        line = json.dumps(
            {
                "user_id": entry.user_id,
                "query": entry.query,
                "chosen_category": entry.chosen_category,
                "timestamp_ms": entry.timestamp_ms,
            },
            ensure_ascii=False,
        )
        with self._lock:
            if self._path is not None:
                try:
                    with self._path.open("a", encoding="utf-8") as handle:
                        handle.write(line + "\n")
                        handle.flush()
                except OSError as exc:
                    raise PersistenceError(f"cannot append to history file {self._path}: {exc}") from exc
            self._entries.append(entry)

    def entries_for(self, user_id: str) -> list[HistoryEntry]:
        with self._lock:
            return [e for e in self._entries if e.user_id == user_id]

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


def record_selection(store: HistoryStore, entry: HistoryEntry) -> HistoryEntry:
    """Persist one selection; the returned entry is the acknowledgment."""
    store.append(entry)
    return entry


def majority_category(results: Sequence, categories: Mapping[str, str], sample_size: int = CATEGORY_SAMPLE_SIZE) -> str | None:
    """Label a result list with the most common category of its top entries.

    `categories` maps normalized URL to category label; unlabeled URLs are
    skipped. Ties go to the category seen first. All-unlabeled lists get None.
    """
    tally: dict[str, int] = {}
    for result in results[:sample_size]:
        label = categories.get(result.url)
        if label is not None:
            tally[label] = tally.get(label, 0) + 1
    best = None
    for label, count in tally.items():  # strict > keeps the first-seen label on ties
        if best is None or count > tally[best]:
            best = label
    return best


def assign_categories(clusters: Sequence[Cluster], categories: Mapping[str, str]) -> list[Cluster]:
    """Return clusters with category set from their top results."""
    return [replace(c, category=majority_category(c.results, categories)) for c in clusters]


def category_weights(
    store: HistoryStore,
    user_id: str,
    half_life_ms: int = DEFAULT_HALF_LIFE_MS,
    *,
    clock=SYSTEM_CLOCK,
) -> dict[str, float]:
    """Decayed selection count per category for one user.

    Each entry contributes 2^(-age / half_life); a selection made exactly one
    half-life ago counts half as much as one made now. Future-dated entries
    are clamped to age zero.
    """
    if half_life_ms < 1:
        raise ValueError(f"half_life_ms must be positive, got {half_life_ms}")
    now = clock.now_ms()
    weights: dict[str, float] = {}
    for entry in store.entries_for(user_id):
        age = max(now - entry.timestamp_ms, 0)
        weight = 2.0 ** (-age / half_life_ms)
        weights[entry.chosen_category] = weights.get(entry.chosen_category, 0.0) + weight
    return weights


def bias_cluster_order(
    clusters: Sequence[Cluster],
    user_id: str,
    store: HistoryStore,
    half_life_ms: int = DEFAULT_HALF_LIFE_MS,
    *,
    clock=SYSTEM_CLOCK,
) -> list[Cluster]:
    """Stably re-sort clusters by the user's decayed preference for their categories.

    Unknown users, empty history and uncategorized clusters all degrade to
    the identity permutation; equal weights preserve the input order.
    """
    if not clusters:
        raise ValueError("clusters must be nonempty")
    if not user_id:
        return list(clusters)
    weights = category_weights(store, user_id, half_life_ms, clock=clock)
    if not weights:
        return list(clusters)
    return sorted(clusters, key=lambda c: -weights.get(c.category or "", 0.0))
