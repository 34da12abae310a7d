"""Hot-loop kernels with a compiled fast path.

The compiled extension is optional: when it is missing, or the
SENSESEARCH_PURE environment variable is set, the pure-Python twins are used.
Which one won is recorded in BACKEND ("c" or "python"). Both backends are
held to bit-identical output by tests/test_kernels.py, and bench/benchmark.py
compares their speed.
"""

import os
from array import array
from typing import Sequence

if os.environ.get("SENSESEARCH_PURE"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"

# Sort keys pack (count, best rank, url id) into 63 bits, 21 bits each.
_KEY_LIMIT = 1 << 21

add_weighted_tf = _impl.add_weighted_tf


def accumulate_scores(scores, doc_positions, freqs, title_freqs, weight, title_bonus=0.0):
    """Add one query term's weighted contribution into the dense score array."""
    add_weighted_tf(scores, doc_positions, freqs, title_freqs, weight, title_bonus)


def fuse_ranked(url_ids: Sequence[int], ranks: Sequence[int], n_urls: int):
    """Fuse a stream of per-engine (url id, rank) entries.

    Entries must already be collapsed to one per (engine, url), so the count
    per url equals the number of engines listing it. Returns (counts,
    best_ranks, order) where order lists url ids by (count desc, best rank
    asc, url id asc).
    """
    # counts are bounded by the entry count, so it must fit 21 bits too
    if n_urls >= _KEY_LIMIT or len(url_ids) >= _KEY_LIMIT or any(r >= _KEY_LIMIT for r in ranks):
        return _fuse_ranked_big(url_ids, ranks, n_urls)
    counts = array("i", bytes(4 * n_urls))
    best_ranks = array("i", [_KEY_LIMIT - 1]) * n_urls
    order = array("i", bytes(4 * n_urls))
    _impl.fuse_and_order(array("i", url_ids), array("i", ranks), counts, best_ranks, order)
    return counts, best_ranks, order


def _fuse_ranked_big(url_ids, ranks, n_urls):
    # Inputs too large for packed 63-bit sort keys; plain tuple sort instead.
    counts = [0] * n_urls
    sentinel = max(ranks, default=0) + 1
    best_ranks = [sentinel] * n_urls
    for u, r in zip(url_ids, ranks):
        counts[u] += 1
        if r < best_ranks[u]:
            best_ranks[u] = r
    order = sorted(range(n_urls), key=lambda u: (-counts[u], best_ranks[u], u))
    return counts, best_ranks, order
