"""HTTP facade over the search pipeline.

One SearchService instance owns the immutable sense inventory and corpus
index plus the synchronized cache and history store; request handling
composes the pipeline: tokenize, reduce, pick the pivot word, expand into
per-sense cluster queries, fan out to every provider, fuse each cluster's
pages by count, label clusters with categories, bias their order by the
user's history, and cache the payload.

Responses are serialized with to_json_bytes so the HTTP body and the CLI's
--json output are byte-identical for the same inputs. Errors use one shape:
{"code", "message", "detail"}.
"""

import json
from typing import Mapping

from . import kernels
from .aggregator import SearchResponse, cluster_and_aggregate
from .cache import CacheKey, ResponseCache
from .clock import SYSTEM_CLOCK
from .config import AppConfig, default_config
from .dictionary import (
    load_inventory,
    lookup_senses,
    reduce_query,
    select_pivot_word,
    tokenize_query,
)
from .errors import AllProvidersFailedError, ConfigError, SenseSearchError
from .expansion import ExpansionStrategy, build_cluster_queries, normalize_query_text
from .history import HistoryEntry, HistoryStore, assign_categories, bias_cluster_order, record_selection
from .providers import fan_out_many
from .simengine import index_corpus, load_corpus
from .stopwords import DEFAULT_STOPWORDS, load_stopwords
from .urls import normalize_url

MAX_K = 100


def to_json_bytes(payload) -> bytes:
    """Canonical JSON encoding shared by the HTTP service and the CLI."""
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def _sense_payload(sense) -> dict:
    return {
        "headword": sense.headword,
        "pos": sense.pos.value,
        "gloss": sense.gloss,
        "is_fallback": sense.is_fallback,
    }


def _result_payload(result) -> dict:
    return {
        "url": result.url,
        "title": result.title,
        "snippet": result.snippet,
        "count": result.count,
        "best_rank": result.best_rank,
        "sources": list(result.sources),
    }


def _cluster_payload(cluster) -> dict:
    return {
        "sense": _sense_payload(cluster.sense),
        "cluster_query": cluster.cluster_query,
        "category": cluster.category,
        "results": [_result_payload(r) for r in cluster.results],
    }


def provider_report_payload(report) -> dict:
    return {
        "provider": report.provider,
        "status": report.status.value,
        "elapsed_ms": report.elapsed_ms,
        "links": report.links,
    }


def response_payload(response: SearchResponse) -> dict:
    """SearchResponse as a JSON-ready dict, without the cache flag.

    served_from_cache is appended by the caller so the cached copy stays
    flag-free and both hit and miss bodies keep the same key order.
    """
    return {
        "query": response.query,
        "reduced_query": response.reduced_query,
        "pivot_word": response.pivot_word,
        "strategy": response.strategy.value,
        "clusters": [_cluster_payload(c) for c in response.clusters],
        "provider_status": [provider_report_payload(r) for r in response.provider_status],
    }


class SearchService:
    """Loads the pipeline's shared state once and serves requests off it."""

    def __init__(self, config: AppConfig | None = None, *, clock=SYSTEM_CLOCK, transport=None):
        self.config = config or default_config()
        self.clock = clock
        self.transport = transport
        if self.config.stopwords_path is not None:
            self.stopwords = load_stopwords(self.config.stopwords_path)
        else:
            self.stopwords = DEFAULT_STOPWORDS
        self.inventory = load_inventory(self.config.dictionary_path, clock=clock)
        documents = load_corpus(self.config.corpus_path)
        self.index = index_corpus(documents)
        self.categories = {
            normalize_url(doc.url): doc.category for doc in documents if doc.category
        }
        self.history = HistoryStore(self.config.history_path)
        self.cache = None
        if self.config.cache_enabled:
            self.cache = ResponseCache(
                self.config.cache_capacity, self.config.cache_ttl_ms, clock=clock
            )
            if self.config.cache_snapshot_path is not None:
                self.cache.load_snapshot(self.config.cache_snapshot_path)

    def enabled_providers(self) -> list:
        return [p for p in self.config.providers if p.enabled]

    def search(
        self,
        q: str,
        k: int | None = None,
        user_id: str = "",
        strategy: ExpansionStrategy | None = None,
    ) -> dict:
        """Run the full pipeline; returns the JSON-ready response payload."""
        text = normalize_query_text(q)
        if not text:
            raise ValueError("query must be nonempty")
        depth = self.config.default_k if k is None else k
        if not 1 <= depth <= MAX_K:
            raise ValueError(f"k must be between 1 and {MAX_K}, got {depth}")
        chosen = self.config.strategy if strategy is None else strategy
        providers = self.enabled_providers()
        if not providers:
            raise ConfigError("no enabled providers configured")

        key = CacheKey.build(text, (p.id for p in providers), depth, chosen, user_id)
        if self.cache is not None:
            hit = self.cache.get(key)
            if hit is not None:
                return {**hit, "served_from_cache": True}

        payload = response_payload(self._pipeline(text, depth, user_id, chosen, providers))
        if self.cache is not None:
            self.cache.put(key, payload)
        return {**payload, "served_from_cache": False}

    def _pipeline(self, text, depth, user_id, strategy, providers) -> SearchResponse:
        tokens = tokenize_query(text)
        if not tokens:
            raise ValueError("query contains no searchable words")
        reduced_tokens = reduce_query(tokens, self.stopwords)
        reduced = " ".join(reduced_tokens)
        pivot = select_pivot_word(self.inventory, reduced_tokens, self.stopwords)
        senses = lookup_senses(self.inventory, pivot)
        cluster_queries = build_cluster_queries(reduced, senses, strategy, stopwords=self.stopwords)

        page_groups = fan_out_many(
            providers,
            [cq.provider_query for cq in cluster_queries],
            depth,
            index=self.index,
            clock=self.clock,
            slack_ms=self.config.slack_ms,
            transport=self.transport,
        )
        response = cluster_and_aggregate(
            list(zip(cluster_queries, page_groups)),
            query=text,
            reduced_query=reduced,
            pivot_word=pivot,
            strategy=strategy,
        )
        clusters = assign_categories(response.clusters, self.categories)
        clusters = bias_cluster_order(
            clusters, user_id, self.history, self.config.half_life_ms, clock=self.clock
        )
        return SearchResponse(
            query=response.query,
            reduced_query=response.reduced_query,
            pivot_word=response.pivot_word,
            strategy=response.strategy,
            clusters=tuple(clusters),
            provider_status=response.provider_status,
        )

    def senses(self, q: str) -> dict:
        """Sense list for the query's pivot word."""
        text = normalize_query_text(q)
        if not text:
            raise ValueError("query must be nonempty")
        tokens = tokenize_query(text)
        if not tokens:
            raise ValueError("query contains no searchable words")
        reduced_tokens = reduce_query(tokens, self.stopwords)
        pivot = select_pivot_word(self.inventory, reduced_tokens, self.stopwords)
        return {
            "query": text,
            "pivot_word": pivot,
            "senses": [_sense_payload(s) for s in lookup_senses(self.inventory, pivot)],
        }

    def record_history(self, user_id: str, query: str, chosen_category: str) -> dict:
        entry = HistoryEntry(
            user_id=user_id,
            query=normalize_query_text(query),
            chosen_category=chosen_category,
            timestamp_ms=self.clock.now_ms(),
        )
        record_selection(self.history, entry)
        return {
            "recorded": True,
            "user_id": entry.user_id,
            "query": entry.query,
            "chosen_category": entry.chosen_category,
            "timestamp_ms": entry.timestamp_ms,
        }

    def providers_payload(self) -> dict:
        return {
            "providers": [
                {
                    "id": p.id,
                    "kind": p.kind.value,
                    "endpoint": p.endpoint,
                    "timeout_ms": p.timeout_ms,
                    "enabled": p.enabled,
                    "mode": p.mode.value,
                }
                for p in self.config.providers
            ]
        }

    def health_payload(self) -> dict:
        return {
            "status": "ok",
            "documents": self.index.doc_count,
            "headwords": len(self.inventory),
            "kernel_backend": kernels.BACKEND,
        }

    def shutdown(self) -> None:
        if self.cache is not None and self.config.cache_snapshot_path is not None:
            self.cache.save_snapshot(self.config.cache_snapshot_path)


def create_app(config: AppConfig | None = None, *, service: SearchService | None = None):
    """Build the FastAPI application around one SearchService."""
    from contextlib import asynccontextmanager

    from fastapi import FastAPI, Request, Response
    from fastapi.middleware.cors import CORSMiddleware

    svc = service or SearchService(config)

    @asynccontextmanager
    async def lifespan(_app):
        yield
        svc.shutdown()

    app = FastAPI(title="sensesearch", docs_url=None, redoc_url=None, openapi_url=None, lifespan=lifespan)
    app.state.service = svc
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    def json_response(payload, status_code: int = 200) -> Response:
        return Response(
            content=to_json_bytes(payload),
            status_code=status_code,
            media_type="application/json",
        )

    def error_response(status_code: int, code: str, message: str, detail=None) -> Response:
        return json_response({"code": code, "message": message, "detail": detail}, status_code)

    def parse_int(raw: str | None, name: str):
        if raw is None or raw == "":
            return None
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{name} must be an integer, got {raw!r}") from None

    @app.get("/api/search")
    def api_search(request: Request) -> Response:
        params = request.query_params
        try:
            k = parse_int(params.get("k"), "k")
            strategy = None
            if params.get("strategy"):
                try:
                    strategy = ExpansionStrategy(params["strategy"])
                except ValueError:
                    raise ValueError(f"unknown strategy {params['strategy']!r}") from None
            payload = svc.search(
                params.get("q", ""), k=k, user_id=params.get("user", ""), strategy=strategy
            )
        except ValueError as exc:
            return error_response(400, "bad_request", str(exc))
        except AllProvidersFailedError as exc:
            detail = [provider_report_payload(r) for r in exc.provider_status]
            return error_response(502, "all_providers_failed", str(exc), detail)
        except SenseSearchError as exc:
            return error_response(500, "internal_error", str(exc))
        return json_response(payload)

    @app.get("/api/senses")
    def api_senses(request: Request) -> Response:
        try:
            payload = svc.senses(request.query_params.get("q", ""))
        except ValueError as exc:
            return error_response(400, "bad_request", str(exc))
        return json_response(payload)

    @app.post("/api/history")
    async def api_history(request: Request) -> Response:
        try:
            body = json.loads(await request.body())
        except ValueError:
            return error_response(400, "bad_request", "body must be a JSON object")
        if not isinstance(body, Mapping):
            return error_response(400, "bad_request", "body must be a JSON object")
        try:
            payload = svc.record_history(
                user_id=str(body.get("user_id", "") or ""),
                query=str(body.get("query", "") or ""),
                chosen_category=str(body.get("chosen_category", "") or ""),
            )
        except ValueError as exc:
            return error_response(400, "bad_request", str(exc))
        except SenseSearchError as exc:
            return error_response(500, "persistence_error", str(exc))
        return json_response(payload, status_code=201)

    @app.get("/api/providers")
    def api_providers() -> Response:
        return json_response(svc.providers_payload())

    @app.get("/api/healthz")
    def api_healthz() -> Response:
        return json_response(svc.health_payload())

    return app
