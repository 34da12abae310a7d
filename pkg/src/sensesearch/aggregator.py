"""Count-based fusion of ranked result lists.

The merging rule: a link listed by more engines outranks a link listed by
fewer, regardless of position. Within one engine duplicates collapse to
their best rank first, so the count is over distinct engines, not raw
occurrences. Ties on count break by best rank, then URL text, which keeps
the output independent of the order the engine pages arrive in.

Clusters keep their per-sense result lists separate; a URL may legitimately
appear in several clusters, so there is no cross-cluster deduplication.
"""

from dataclasses import dataclass

from . import kernels
from .errors import AllProvidersFailedError, EmptyResultsError
from .expansion import ClusterQuery, ExpansionStrategy
from .dictionary import Sense
from .model import EngineResultPage, PageStatus, ResultLink
from .urls import normalize_url

__all__ = [
    "AggregatedResult",
    "Cluster",
    "ProviderReport",
    "SearchResponse",
    "aggregate",
    "cluster_and_aggregate",
    "normalize_url",
]


@dataclass(frozen=True)
class AggregatedResult:
    url: str
    title: str
    snippet: str
    count: int
    best_rank: int
    sources: tuple  # provider ids, sorted ascending

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.best_rank < 1:
            raise ValueError(f"best_rank must be >= 1, got {self.best_rank}")
        if self.count != len(self.sources):
            raise ValueError(f"count {self.count} != {len(self.sources)} sources")


@dataclass(frozen=True)
class Cluster:
    sense: Sense
    cluster_query: str
    results: tuple  # AggregatedResult, count-sorted
    category: str | None = None


@dataclass(frozen=True)
class ProviderReport:
    provider: str
    status: PageStatus
    elapsed_ms: int
    links: int


@dataclass(frozen=True)
class SearchResponse:
    query: str
    reduced_query: str
    pivot_word: str
    strategy: ExpansionStrategy
    clusters: tuple  # Cluster, in sense order until history bias reorders
    provider_status: tuple  # ProviderReport, one per contributing provider
    served_from_cache: bool = False


def _collapse_by_provider(pages: list) -> tuple[list, dict]:
    """Group ok pages by provider and collapse each provider's duplicate URLs.

    Returns the providers in first-appearance order together with a map
    provider -> {url: (best_rank, link)}.
    """
    provider_order: list[str] = []
    per_provider: dict[str, dict[str, tuple[int, ResultLink]]] = {}
    for page in pages:
        if page.provider not in per_provider:
            provider_order.append(page.provider)
            per_provider[page.provider] = {}
        best = per_provider[page.provider]
        for link in page.links:
            url = normalize_url(link.url)
            if url not in best or link.rank < best[url][0]:
                best[url] = (link.rank, link)
    return provider_order, per_provider


def aggregate(pages: list) -> list[AggregatedResult]:
    """Fuse engine pages into one list ordered by (count desc, best_rank asc, url asc).

    Only pages with status ok contribute; zero ok pages is an error. The
    title and snippet of each fused entry come from the contributing link
    with the smallest rank, ties broken by the order providers appear in
    the input.
    """
    ok_pages = [p for p in pages if p.status is PageStatus.OK]
    if not ok_pages:
        raise EmptyResultsError("no page with status ok to aggregate")

    provider_order, per_provider = _collapse_by_provider(ok_pages)

    # Ids assigned in lexicographic URL order make the kernel's id tie-break
    # coincide with the URL tie-break.
    all_urls = sorted({url for best in per_provider.values() for url in best})
    url_id = {url: i for i, url in enumerate(all_urls)}

    flat_ids: list[int] = []
    flat_ranks: list[int] = []
    sources: dict[str, list[str]] = {url: [] for url in all_urls}
    attribution: dict[str, tuple[int, int, ResultLink]] = {}
    for position, provider in enumerate(provider_order):
        for url, (rank, link) in per_provider[provider].items():
            flat_ids.append(url_id[url])
            flat_ranks.append(rank)
            sources[url].append(provider)
            claim = (rank, position, link)
            if url not in attribution or claim[:2] < attribution[url][:2]:
                attribution[url] = claim

    counts, best_ranks, order = kernels.fuse_ranked(flat_ids, flat_ranks, len(all_urls))

    results = []
    for uid in order:
        url = all_urls[uid]
        link = attribution[url][2]
        results.append(
            AggregatedResult(
                url=url,
                title=link.title,
                snippet=link.snippet,
                count=counts[uid],
                best_rank=best_ranks[uid],
                sources=tuple(sorted(sources[url])),
            )
        )
    return results


def _provider_reports(page_groups: list) -> tuple:
    """One report per provider across all cluster queries.

    A provider that succeeded for any cluster query reports ok; otherwise it
    reports its first observed failure. Elapsed is the slowest of its pages,
    links the total it returned.
    """
    order: list[str] = []
    status: dict[str, PageStatus] = {}
    elapsed: dict[str, int] = {}
    links: dict[str, int] = {}
    for pages in page_groups:
        for page in pages:
            pid = page.provider
            if pid not in status:
                order.append(pid)
                status[pid] = page.status
                elapsed[pid] = page.elapsed_ms
                links[pid] = len(page.links)
            else:
                if status[pid] is not PageStatus.OK and page.status is PageStatus.OK:
                    status[pid] = PageStatus.OK
                elapsed[pid] = max(elapsed[pid], page.elapsed_ms)
                links[pid] += len(page.links)
    return tuple(ProviderReport(pid, status[pid], elapsed[pid], links[pid]) for pid in order)


def cluster_and_aggregate(
    cluster_pages: list,
    *,
    query: str = "",
    reduced_query: str = "",
    pivot_word: str = "",
    strategy: ExpansionStrategy = ExpansionStrategy.CONCATENATED,
) -> SearchResponse:
    """Aggregate each (ClusterQuery, pages) pair into a Cluster, in sense order.

    A cluster whose providers all failed yields an empty result list; only
    when every cluster failed does the whole call fail, carrying the
    per-provider statuses for diagnosis.
    """
    if not cluster_pages:
        raise ValueError("cluster_pages must be nonempty")

    reports = _provider_reports([pages for _, pages in cluster_pages])
    clusters = []
    any_ok = False
    for cluster_query, pages in cluster_pages:
        if not isinstance(cluster_query, ClusterQuery):
            raise TypeError(f"expected ClusterQuery, got {type(cluster_query).__name__}")
        try:
            results = tuple(aggregate(list(pages)))
            any_ok = True
        except EmptyResultsError:
            results = ()
        clusters.append(Cluster(cluster_query.sense, cluster_query.provider_query, results))

    if not any_ok:
        raise AllProvidersFailedError("every provider failed for every cluster query", reports)

    return SearchResponse(
        query=query,
        reduced_query=reduced_query,
        pivot_word=pivot_word,
        strategy=strategy,
        clusters=tuple(clusters),
        provider_status=reports,
    )
