"""Pure-Python reference implementations of the hot-loop kernels.

sensesearch._ckernels is the compiled twin; both must produce bit-identical
output (see tests/test_kernels.py). Keep arithmetic expression order in sync
between the two files.
"""

_KEY_BITS = 21
_KEY_MASK = (1 << _KEY_BITS) - 1


def add_weighted_tf(scores, doc_positions, freqs, title_freqs, weight, title_bonus):
    """scores[p] += weight * (tf + title_bonus * title_tf) for one query term."""
    for i in range(len(doc_positions)):
        scores[doc_positions[i]] += weight * (freqs[i] + title_bonus * title_freqs[i])


def fuse_and_order(url_ids, ranks, counts, best_ranks, order):
    """Count entries per url id, track minimum rank, fill `order` with url ids
    sorted by (count desc, best rank asc, url id asc).

    `counts` must arrive zeroed and `best_ranks` filled with 2**21 - 1; every
    url id, rank and count must be < 2**21 so the sort key packs into 63 bits.
    """
    for i in range(len(url_ids)):
        u = url_ids[i]
        r = ranks[i]
        counts[u] += 1
        if r < best_ranks[u]:
            best_ranks[u] = r
    # count inverted within 21 bits (so count 0 packs as 2**21 - 1, never
    # touching the sign bit of a 64-bit key in the compiled twin)
    keys = sorted(
        (((1 << _KEY_BITS) - 1 - counts[u]) << (2 * _KEY_BITS)) | (best_ranks[u] << _KEY_BITS) | u
        for u in range(len(counts))
    )
    for i, key in enumerate(keys):
        order[i] = key & _KEY_MASK
