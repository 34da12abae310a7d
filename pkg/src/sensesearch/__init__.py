"""Sense-clustered metasearch.

A query is expanded into one provider query per dictionary sense of its
pivot word, fanned out to several engines, and each sense's result pages
are fused by counting how many engines list each link. The packaged corpus
and simulated engines make the whole pipeline runnable offline.
"""

from .aggregator import (
    AggregatedResult,
    Cluster,
    ProviderReport,
    SearchResponse,
    aggregate,
    cluster_and_aggregate,
    normalize_url,
)
from .dictionary import (
    PartOfSpeech,
    Sense,
    SenseInventory,
    load_inventory,
    lookup_senses,
    reduce_query,
    select_pivot_word,
    tokenize_query,
)
from .expansion import ClusterQuery, ExpansionStrategy, build_cluster_queries
from .model import EngineResultPage, PageStatus, ResultLink
from .providers import ProviderDescriptor, ProviderKind, fan_out, fan_out_many, parse_results, query_provider
from .simengine import Document, Index, RankingMode, index_corpus, load_corpus, search_index

__version__ = "0.1.0"

__all__ = [
    "AggregatedResult",
    "Cluster",
    "ClusterQuery",
    "Document",
    "EngineResultPage",
    "ExpansionStrategy",
    "Index",
    "PageStatus",
    "PartOfSpeech",
    "ProviderDescriptor",
    "ProviderKind",
    "ProviderReport",
    "RankingMode",
    "ResultLink",
    "SearchResponse",
    "Sense",
    "SenseInventory",
    "aggregate",
    "build_cluster_queries",
    "cluster_and_aggregate",
    "fan_out",
    "fan_out_many",
    "index_corpus",
    "load_corpus",
    "load_inventory",
    "lookup_senses",
    "normalize_url",
    "parse_results",
    "query_provider",
    "reduce_query",
    "search_index",
    "select_pivot_word",
    "tokenize_query",
    "__version__",
]
