#!/usr/bin/env python3
"""Generate the bundled synthetic corpus.

Writes a JSON Lines file of labeled documents (doc_id, url, title, body,
category) spread over six categories. Generation is fully deterministic for
a given seed, so the committed corpus can be reproduced byte-for-byte. The
vocabularies deliberately share ambiguous words (bank, pitch, rock, java,
keyboard) across categories so that sense-expanded queries pull genuinely
different result sets per sense.

Usage: python scripts/gen_corpus.py [--out PATH] [--seed N] [--per-category N]
"""

import argparse
import json
import random
from pathlib import Path

CATEGORIES = {
    "finance": {
        "domains": ("ledgerpost.example", "fairratebank.example", "coinvault.example"),
        "core": (
            "bank", "financial", "institution", "money", "loan", "deposit",
            "account", "interest", "rate", "credit", "capital", "market",
            "investment", "savings", "fund", "currency", "branch", "lender",
            "mortgage", "budget", "economy", "bond", "asset", "income",
            "tax", "payment", "rely", "trust", "customer", "balance",
        ),
    },
    "music": {
        "domains": ("chordline.example", "tonerow.example", "backbeat.example"),
        "core": (
            "keyboard", "note", "key", "scale", "pitch", "bass", "rock",
            "guitar", "band", "song", "album", "melody", "chord", "concert",
            "instrument", "musical", "row", "keys", "piano", "tune",
            "rhythm", "singer", "stage", "organ", "tone", "harmony",
            "record", "solo", "studio", "orchestra",
        ),
    },
    "nature": {
        "domains": ("rivervalley.example", "wildbanks.example", "greenatlas.example"),
        "core": (
            "river", "bank", "sides", "water", "body", "stream", "valley",
            "shore", "flood", "forest", "mountain", "trail", "spring",
            "wave", "current", "rock", "palm", "seal", "bat", "python",
            "mouse", "lake", "delta", "erosion", "wildlife", "habitat",
            "rain", "cliff", "meadow", "reed",
        ),
    },
    "sports": {
        "domains": ("midwicket.example", "backpost.example", "courtsider.example"),
        "core": (
            "match", "pitch", "court", "club", "bat", "stadium", "team",
            "player", "score", "league", "tournament", "goal", "cricket",
            "tennis", "football", "season", "coach", "title", "innings",
            "bowler", "batsman", "fans", "final", "umpire", "captain",
            "victory", "defeat", "training", "transfer", "derby",
        ),
    },
    "technology": {
        "domains": ("stacktrace.example", "bitpress.example", "nullbyte.example"),
        "core": (
            "python", "java", "keyboard", "mouse", "server", "computer",
            "software", "code", "program", "language", "data", "network",
            "system", "typing", "text", "keys", "set", "compiler",
            "library", "framework", "developer", "release", "version",
            "interface", "memory", "cloud", "database", "script",
            "terminal", "protocol",
        ),
    },
    "travel": {
        "domains": ("farhorizon.example", "portocall.example", "monsoonroad.example"),
        "core": (
            "java", "capital", "city", "island", "beach", "tour", "flight",
            "hotel", "map", "guide", "bangalore", "temple", "palace",
            "market", "harbor", "coast", "journey", "ticket", "season",
            "garden", "museum", "street", "port", "festival", "bridge",
            "station", "monsoon", "bazaar", "fort", "lagoon",
        ),
    },
}

FILLER = (
    "report", "story", "review", "daily", "weekly", "morning", "local",
    "major", "small", "long", "early", "recent", "public", "famous",
    "popular", "old", "new", "great", "quiet", "busy",
)


def _sentence(rng: random.Random, core: tuple) -> str:
    words = []
    for _ in range(rng.randint(6, 10)):
        pool = core if rng.random() < 0.7 else FILLER
        words.append(rng.choice(pool))
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def _document(rng: random.Random, serial: int, category: str, spec: dict) -> dict:
    core = spec["core"]
    title_words = [rng.choice(core) for _ in range(rng.randint(3, 5))]
    title = " ".join(w.capitalize() for w in title_words)
    body = " ".join(_sentence(rng, core) for _ in range(rng.randint(5, 7)))
    domain = rng.choice(spec["domains"])
    slug = "-".join(title_words[:2])
    return {
        "doc_id": f"d{serial:03d}",
        "url": f"https://{domain}/{category}/{slug}-{serial}",
        "title": title,
        "body": body,
        "category": category,
    }


def generate(seed: int, per_category: int) -> list:
    rng = random.Random(seed)
    docs = []
    serial = 1
    for category, spec in CATEGORIES.items():
        for _ in range(per_category):
            docs.append(_document(rng, serial, category, spec))
            serial += 1
    return docs


def main() -> int:
    default_out = Path(__file__).resolve().parent.parent / "src" / "sensesearch" / "data" / "corpus.jsonl"
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=default_out)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--per-category", type=int, default=40)
    args = parser.parse_args()

    docs = generate(args.seed, args.per_category)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", encoding="utf-8") as handle:
        for doc in docs:
            handle.write(json.dumps(doc, ensure_ascii=False) + "\n")
    print(f"wrote {len(docs)} documents to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
