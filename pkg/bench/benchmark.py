#!/usr/bin/env python3
"""Compare the pure-Python and compiled kernel backends.

Times the two hot loops on synthetic workloads sized like a busy search:
score accumulation over posting lists, and rank fusion over per-engine URL
streams. Run from the repository root:

    python3 bench/benchmark.py
    python3 bench/benchmark.py --entries 200000 --urls 40000 --repeats 7
"""

import argparse
import random
import statistics
import time
from array import array

from sensesearch import _pykernels

try:
    from sensesearch import _ckernels
except ImportError:
    _ckernels = None

KEY_LIMIT = 1 << 21


def make_accumulate_workload(rng, n_docs, n_postings):
    doc_positions = array("i", (rng.randrange(n_docs) for _ in range(n_postings)))
    freqs = array("i", (rng.randint(1, 12) for _ in range(n_postings)))
    title_freqs = array("i", (rng.randint(0, 3) for _ in range(n_postings)))
    return doc_positions, freqs, title_freqs


def run_accumulate(impl, n_docs, workload, weight=1.37, title_bonus=2.0):
    doc_positions, freqs, title_freqs = workload
    scores = array("d", bytes(8 * n_docs))
    impl.add_weighted_tf(scores, doc_positions, freqs, title_freqs, weight, title_bonus)
    return scores


def make_fuse_workload(rng, n_urls, n_entries):
    # one entry per (engine, url): ids may repeat across engines, not within
    url_ids = []
    ranks = []
    per_engine = max(n_entries // 5, 1)
    for _ in range(5):
        chosen = rng.sample(range(n_urls), min(per_engine, n_urls))
        url_ids.extend(chosen)
        ranks.extend(range(1, len(chosen) + 1))
    return array("i", url_ids), array("i", ranks)


def run_fuse(impl, n_urls, workload):
    url_ids, ranks = workload
    counts = array("i", bytes(4 * n_urls))
    best_ranks = array("i", [KEY_LIMIT - 1]) * n_urls
    order = array("i", bytes(4 * n_urls))
    impl.fuse_and_order(url_ids, ranks, counts, best_ranks, order)
    return counts, best_ranks, order


def best_of(repeats, fn):
    timings = []
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - started)
    return min(timings), statistics.median(timings)


def report(name, py_best, c_best):
    if c_best is None:
        print(f"{name:<22} python {py_best * 1000:8.3f} ms   (compiled backend unavailable)")
        return
    print(
        f"{name:<22} python {py_best * 1000:8.3f} ms   compiled {c_best * 1000:8.3f} ms"
        f"   speedup x{py_best / c_best:.1f}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--docs", type=int, default=20_000, help="documents in the score array")
    parser.add_argument("--postings", type=int, default=500_000, help="posting entries per accumulate call")
    parser.add_argument("--urls", type=int, default=30_000, help="distinct URLs in the fuse workload")
    parser.add_argument("--entries", type=int, default=100_000, help="(engine, url) entries to fuse")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats; best is reported")
    parser.add_argument("--seed", type=int, default=7, help="workload RNG seed")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    accumulate_workload = make_accumulate_workload(rng, args.docs, args.postings)
    fuse_workload = make_fuse_workload(rng, args.urls, args.entries)

    print(
        f"workloads: accumulate {args.postings} postings over {args.docs} docs; "
        f"fuse {len(fuse_workload[0])} entries over {args.urls} urls; "
        f"best of {args.repeats}"
    )

    if _ckernels is not None:
        py = run_accumulate(_pykernels, args.docs, accumulate_workload)
        cc = run_accumulate(_ckernels, args.docs, accumulate_workload)
        assert py.tobytes() == cc.tobytes(), "backends disagree on accumulate output"
        py_fused = run_fuse(_pykernels, args.urls, fuse_workload)
        cc_fused = run_fuse(_ckernels, args.urls, fuse_workload)
        assert all(a.tobytes() == b.tobytes() for a, b in zip(py_fused, cc_fused)), (
            "backends disagree on fuse output"
        )

    py_acc, _ = best_of(args.repeats, lambda: run_accumulate(_pykernels, args.docs, accumulate_workload))
    c_acc = None
    if _ckernels is not None:
        c_acc, _ = best_of(args.repeats, lambda: run_accumulate(_ckernels, args.docs, accumulate_workload))
    report("accumulate_scores", py_acc, c_acc)

    py_fuse, _ = best_of(args.repeats, lambda: run_fuse(_pykernels, args.urls, fuse_workload))
    c_fuse = None
    if _ckernels is not None:
        c_fuse, _ = best_of(args.repeats, lambda: run_fuse(_ckernels, args.urls, fuse_workload))
    report("fuse_ranked", py_fuse, c_fuse)


if __name__ == "__main__":
    main()
