"""Deterministic local search engines over a bundled corpus.

An inverted index with three ranking modes (raw term frequency, tf-idf, and
tf-idf with triple weight for title occurrences) stands in for "different
search engines": the modes disagree enough about ordering that merging their
pages is a real exercise, while everything stays reproducible offline.
"""

import json
import math
import re
import unicodedata
from array import array
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from . import kernels
from .errors import CorpusError, IndexingError
from .model import ResultLink
from .urls import normalize_url

_TOKEN_RE = re.compile(r"[a-z0-9]+")
_SNIPPET_CHARS = 160


class RankingMode(Enum):
    TF = "tf"
    TFIDF = "tfidf"
    TITLE_BOOST = "title_boost"


@dataclass(frozen=True)
class Document:
    doc_id: str
    url: str
    title: str
    body: str
    category: str = ""


@dataclass(frozen=True)
class _Posting:
    # Parallel arrays over internal doc positions (docs sorted by doc_id).
    positions: array
    freqs: array
    title_freqs: array


@dataclass(frozen=True)
class Index:
    """Immutable inverted index; safe for concurrent searches."""

    docs: tuple[Document, ...]  # sorted by doc_id
    postings: Mapping[str, _Posting]
    doc_lengths: Mapping[str, int]
    doc_count: int

    def idf(self, term: str) -> float:
        posting = self.postings.get(term)
        containing = len(posting.positions) if posting else 0
        return math.log(self.doc_count / (1 + containing)) + 1.0


def tokenize(text: str) -> list[str]:
    """ASCII-fold, lowercase, split on non-alphanumerics, drop 1-char tokens."""
    folded = unicodedata.normalize("NFKD", text).encode("ascii", "ignore").decode("ascii")
    return [t for t in _TOKEN_RE.findall(folded.lower()) if len(t) > 1]


def load_corpus(path) -> list[Document]:
    """Read a JSON Lines corpus (doc_id, url, title, body, category per line)."""
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read corpus file {path}: {exc}") from exc
    docs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            docs.append(
                Document(
                    doc_id=str(record["doc_id"]),
                    url=str(record["url"]),
                    title=str(record.get("title", "")),
                    body=str(record.get("body", "")),
                    category=str(record.get("category", "")),
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CorpusError(f"{path}:{lineno}: bad corpus record: {exc}") from exc
    return docs


def index_corpus(docs: Sequence[Document]) -> Index:
    """Build the inverted index; the result is identical for any document order."""
    if not docs:
        raise IndexingError("document list must be nonempty")
    seen = set()
    for doc in docs:
        if doc.doc_id in seen:
            raise IndexingError(f"duplicate doc_id: {doc.doc_id}")
        seen.add(doc.doc_id)
        if not doc.url:
            raise IndexingError(f"document {doc.doc_id} has an empty url")

    ordered = tuple(sorted(docs, key=lambda d: d.doc_id))
    raw: dict[str, dict[int, list[int]]] = {}
    doc_lengths = {}
    for position, doc in enumerate(ordered):
        title_tokens = tokenize(doc.title)
        body_tokens = tokenize(doc.body)
        doc_lengths[doc.doc_id] = len(title_tokens) + len(body_tokens)
        for token in title_tokens:
            slot = raw.setdefault(token, {}).setdefault(position, [0, 0])
            slot[0] += 1
            slot[1] += 1
        for token in body_tokens:
            slot = raw.setdefault(token, {}).setdefault(position, [0, 0])
            slot[0] += 1

    postings = {}
    for term, per_doc in raw.items():
        positions = sorted(per_doc)
        postings[term] = _Posting(
            positions=array("i", positions),
            freqs=array("i", [per_doc[p][0] for p in positions]),
            title_freqs=array("i", [per_doc[p][1] for p in positions]),
        )
    return Index(docs=ordered, postings=postings, doc_lengths=doc_lengths, doc_count=len(ordered))


def _snippet(body: str) -> str:
    return " ".join(body.split())[:_SNIPPET_CHARS]


def search_index(
    idx: Index,
    query: str,
    mode: RankingMode = RankingMode.TFIDF,
    k: int = 20,
    source: str = "local",
) -> list[ResultLink]:
    """Top-k documents for the query under the given ranking mode.

    Score is the sum over query terms of tf, tf*idf, or tf*idf with title
    occurrences counted three times. Ties break on ascending doc_id, so the
    ordering does not depend on corpus file order.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    terms = tokenize(query)
    scores = array("d", bytes(8 * idx.doc_count))
    for term in terms:
        posting = idx.postings.get(term)
        if posting is None:
            continue
        if mode is RankingMode.TF:
            weight, title_bonus = 1.0, 0.0
        elif mode is RankingMode.TFIDF:
            weight, title_bonus = idx.idf(term), 0.0
        else:  # title occurrences already count once in freqs; add 2 more
            weight, title_bonus = idx.idf(term), 2.0
        kernels.accumulate_scores(scores, posting.positions, posting.freqs, posting.title_freqs, weight, title_bonus)

    hits = [(-scores[p], idx.docs[p].doc_id, p) for p in range(idx.doc_count) if scores[p] > 0.0]
    hits.sort()
    links = []
    for rank, (_, _, position) in enumerate(hits[:k], start=1):
        doc = idx.docs[position]
        links.append(
            ResultLink(
                url=normalize_url(doc.url),
                title=doc.title,
                snippet=_snippet(doc.body),
                source_engine=source,
                rank=rank,
            )
        )
    return links
