"""Derive one provider query per sense.

Default strategy concatenates the (normalized) user query with the sense
gloss, e.g. "bank" + "financial institution" -> "bank financial institution";
meaning_only sends just the gloss. Glosses are trimmed to their first few
content words so provider queries stay short.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .dictionary import Sense
from .stopwords import DEFAULT_STOPWORDS


class ExpansionStrategy(Enum):
    CONCATENATED = "concatenated"
    MEANING_ONLY = "meaning_only"


@dataclass(frozen=True)
class ClusterQuery:
    """A provider query bound to the sense whose cluster it will fill."""

    sense: Sense
    provider_query: str
    strategy: ExpansionStrategy


def normalize_query_text(text: str) -> str:
    """Lowercase and collapse runs of whitespace to single spaces."""
    return " ".join(text.lower().split())


def _gloss_words(gloss: str, stopwords: set, max_gloss_words: int) -> list[str]:
    words = normalize_query_text(gloss).split()
    content = [w for w in words if w not in stopwords]
    if not content:  # gloss made only of stopwords: keep it verbatim
        content = words
    return content[:max_gloss_words]


def build_cluster_queries(
    user_query: str,
    senses: Sequence[Sense],
    strategy: ExpansionStrategy = ExpansionStrategy.CONCATENATED,
    max_senses: int = 8,
    max_gloss_words: int = 4,
    stopwords: Iterable[str] = DEFAULT_STOPWORDS,
) -> list[ClusterQuery]:
    """Build at most max_senses cluster queries, one per sense, in sense order.

    Gloss words already present in the query are not repeated (a fallback
    sense, whose gloss is the query itself, degenerates to the bare query).
    """
    base = normalize_query_text(user_query)
    if not base:
        raise ValueError("user query must be nonempty")
    if not senses:
        raise ValueError("sense list must be nonempty")
    stopset = set(stopwords)
    base_words = base.split()

    queries = []
    for sense in senses[:max_senses]:
        gloss_words = _gloss_words(sense.gloss, stopset, max_gloss_words)
        if strategy is ExpansionStrategy.MEANING_ONLY:
            provider_query = " ".join(gloss_words)
        else:
            tail = [w for w in gloss_words if w not in base_words]
            provider_query = " ".join(base_words + tail)
        queries.append(ClusterQuery(sense, provider_query, strategy))
    return queries
