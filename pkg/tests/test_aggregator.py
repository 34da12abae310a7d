"""Count-based fusion against the brute-force oracle, plus its invariants."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_page
from oracles import fuse_oracle
from sensesearch.aggregator import AggregatedResult, aggregate, cluster_and_aggregate
from sensesearch.dictionary import PartOfSpeech, Sense
from sensesearch.errors import AllProvidersFailedError, EmptyResultsError
from sensesearch.expansion import ClusterQuery, ExpansionStrategy
from sensesearch.model import EngineResultPage, PageStatus, ResultLink

# Normalization fixed points, so package output and oracle output share URLs.
URLS = [f"https://site{chr(c)}.example/page" for c in range(ord("a"), ord("k"))]


def _url(name):
    return f"https://{name.lower()}.example/page"


def _pages(*engine_lists):
    return [make_page(engine, [_url(n) for n in names]) for engine, names in engine_lists]


def _order(results):
    return [r.url for r in results]


def test_worked_instance_matches_oracle_exactly():
    engine_lists = [("e1", ["A", "B", "C"]), ("e2", ["B", "C", "D"]), ("e3", ["C", "E", "A"])]
    results = aggregate(_pages(*engine_lists))
    expected = fuse_oracle([(e, [_url(n) for n in names]) for e, names in engine_lists])
    assert [(r.url, r.count, r.best_rank) for r in results] == expected


def test_worked_instance_headline_properties():
    results = aggregate(_pages(("e1", ["A", "B", "C"]), ("e2", ["B", "C", "D"]), ("e3", ["C", "E", "A"])))
    by_url = {r.url: r for r in results}
    assert results[0].url == _url("C") and results[0].count == 3
    assert by_url[_url("A")].count == 2 and by_url[_url("B")].count == 2
    assert by_url[_url("D")].count == 1 and by_url[_url("E")].count == 1
    assert _order(results).index(_url("A")) < _order(results).index(_url("B"))  # url tie-break
    assert by_url[_url("C")].sources == ("e1", "e2", "e3")


def test_single_engine_is_identity():
    results = aggregate(_pages(("only", ["B", "A", "C"])))
    assert _order(results) == [_url("B"), _url("A"), _url("C")]
    assert [r.count for r in results] == [1, 1, 1]
    assert [r.best_rank for r in results] == [1, 2, 3]


def test_identical_engines_keep_the_common_order():
    lists = [("e1", ["B", "A", "C"]), ("e2", ["B", "A", "C"]), ("e3", ["B", "A", "C"])]
    results = aggregate(_pages(*lists))
    assert _order(results) == [_url("B"), _url("A"), _url("C")]
    assert all(r.count == 3 for r in results)


def test_within_engine_duplicate_counts_once_at_best_rank():
    page = make_page("e1", [_url("A"), _url("B"), _url("A")])
    results = aggregate([page, make_page("e2", [_url("B")])])
    by_url = {r.url: r for r in results}
    assert by_url[_url("A")].count == 1
    assert by_url[_url("A")].best_rank == 1
    assert by_url[_url("B")].count == 2


def test_duplicate_urls_with_case_and_slash_variants_fuse():
    e1 = make_page("e1", ["HTTP://Example.com:80/Path/"])
    e2 = make_page("e2", ["http://example.com/Path"])
    results = aggregate([e1, e2])
    assert len(results) == 1
    assert results[0].url == "http://example.com/Path"
    assert results[0].count == 2


def test_count_dominates_rank():
    # B is last everywhere but listed by both engines; A is first in one.
    results = aggregate(_pages(("e1", ["A", "C", "B"]), ("e2", ["D", "C", "B"])))
    by_url = {r.url: r for r in results}
    order = _order(results)
    assert by_url[_url("B")].count == 2
    assert by_url[_url("A")].count == 1
    assert order.index(_url("B")) < order.index(_url("A"))
    assert order.index(_url("C")) < order.index(_url("B"))  # same count, better rank


def test_failed_pages_do_not_contribute():
    pages = _pages(("e1", ["A", "B"]))
    pages.append(make_page("e2", [], status=PageStatus.TIMEOUT))
    results = aggregate(pages)
    assert all(r.count == 1 for r in results)
    assert all(r.sources == ("e1",) for r in results)


def test_all_pages_failed_raises():
    pages = [
        make_page("e1", [], status=PageStatus.TIMEOUT),
        make_page("e2", [], status=PageStatus.TRANSPORT_ERROR),
    ]
    with pytest.raises(EmptyResultsError):
        aggregate(pages)


def test_ok_pages_with_no_links_aggregate_to_nothing():
    assert aggregate([make_page("e1", []), make_page("e2", [])]) == []


def _page_with_titles(provider, entries):
    links = tuple(
        ResultLink(url=url, title=title, snippet=snippet, source_engine=provider, rank=i)
        for i, (url, title, snippet) in enumerate(entries, start=1)
    )
    return EngineResultPage(provider=provider, query="q", links=links, elapsed_ms=1, status=PageStatus.OK)


def test_attribution_prefers_smallest_rank_then_earliest_provider():
    first = _page_with_titles("e1", [(_url("B"), "filler-e1", ""), (_url("A"), "from-e1", "s1")])
    second = _page_with_titles("e2", [(_url("C"), "filler-e2", ""), (_url("A"), "from-e2", "s2")])
    by_url = {r.url: r for r in aggregate([first, second])}
    # A sits at rank 2 in both pages: the provider seen earlier wins
    assert by_url[_url("A")].title == "from-e1"
    assert by_url[_url("A")].snippet == "s1"

    third = _page_with_titles("e3", [(_url("A"), "rank1-e3", "s3")])
    by_url = {r.url: r for r in aggregate([first, second, third])}
    assert by_url[_url("A")].title == "rank1-e3"  # strictly better rank wins regardless of order


engine_lists_strategy = st.lists(
    st.tuples(
        st.sampled_from(["e1", "e2", "e3", "e4", "e5"]),
        st.lists(st.sampled_from(URLS), max_size=50),
    ),
    min_size=1,
    max_size=5,
    unique_by=lambda pair: pair[0],
).filter(lambda lists: any(urls for _, urls in lists))


@settings(max_examples=200, deadline=None)
@given(engine_lists_strategy)
def test_aggregate_matches_oracle(engine_lists):
    pages = [make_page(engine, urls) for engine, urls in engine_lists]
    results = aggregate(pages)
    assert [(r.url, r.count, r.best_rank) for r in results] == fuse_oracle(engine_lists)


@settings(max_examples=100, deadline=None)
@given(engine_lists_strategy, st.randoms())
def test_engine_order_invariance(engine_lists, rng):
    pages = [make_page(engine, urls) for engine, urls in engine_lists]
    shuffled = list(pages)
    rng.shuffle(shuffled)
    assert aggregate(pages) == aggregate(shuffled)


@settings(max_examples=100, deadline=None)
@given(engine_lists_strategy)
def test_conservation_and_url_preservation(engine_lists):
    results = aggregate([make_page(engine, urls) for engine, urls in engine_lists])
    assert {r.url for r in results} == {url for _, urls in engine_lists for url in urls}
    # each (engine, distinct url) pair contributes exactly one count
    expected_total = sum(len(set(urls)) for _, urls in engine_lists)
    assert sum(r.count for r in results) == expected_total


@settings(max_examples=100, deadline=None)
@given(engine_lists_strategy)
def test_output_key_is_sorted(engine_lists):
    results = aggregate([make_page(engine, urls) for engine, urls in engine_lists])
    keys = [(-r.count, r.best_rank, r.url) for r in results]
    assert keys == sorted(keys)


def test_exhaustive_small_permutations():
    lists = [("e1", ["A", "B", "C"]), ("e2", ["B", "C", "D"]), ("e3", ["C", "E", "A"])]
    baseline = aggregate(_pages(*lists))
    for perm in itertools.permutations(lists):
        assert aggregate(_pages(*perm)) == baseline


def test_aggregated_result_validation():
    with pytest.raises(ValueError):
        AggregatedResult("u", "t", "s", count=0, best_rank=1, sources=())
    with pytest.raises(ValueError):
        AggregatedResult("u", "t", "s", count=2, best_rank=1, sources=("e1",))
    with pytest.raises(ValueError):
        AggregatedResult("u", "t", "s", count=1, best_rank=0, sources=("e1",))


def _cq(headword, gloss, provider_query):
    sense = Sense(headword=headword, pos=PartOfSpeech.NOUN, gloss=gloss)
    return ClusterQuery(sense=sense, provider_query=provider_query, strategy=ExpansionStrategy.CONCATENATED)


def test_cluster_and_aggregate_keeps_sense_order_and_reports():
    cq1 = _cq("bank", "financial institution", "bank financial institution")
    cq2 = _cq("bank", "sides of a water body", "bank sides water body")
    pages1 = _pages(("e1", ["A", "B"]), ("e2", ["B"]))
    pages2 = [make_page("e1", [_url("C")]), make_page("e2", [], status=PageStatus.TIMEOUT, elapsed_ms=50)]
    response = cluster_and_aggregate([(cq1, pages1), (cq2, pages2)], query="bank")

    assert [c.cluster_query for c in response.clusters] == [cq1.provider_query, cq2.provider_query]
    assert response.clusters[0].sense == cq1.sense
    assert response.clusters[1].results[0].url == _url("C")
    assert response.query == "bank"

    reports = {r.provider: r for r in response.provider_status}
    assert set(reports) == {"e1", "e2"}
    assert reports["e1"].status is PageStatus.OK
    assert reports["e1"].links == 3  # two links for the first cluster, one for the second
    assert reports["e2"].status is PageStatus.OK  # succeeded for the first cluster
    assert reports["e2"].links == 1
    assert reports["e2"].elapsed_ms == 50  # slowest page wins


def test_cluster_with_all_failures_yields_empty_results():
    cq1 = _cq("bank", "financial institution", "bank financial institution")
    cq2 = _cq("bank", "rely upon", "bank rely upon")
    ok_pages = _pages(("e1", ["A"]))
    failed_pages = [make_page("e1", [], status=PageStatus.PARSE_ERROR)]
    response = cluster_and_aggregate([(cq1, ok_pages), (cq2, failed_pages)])
    assert response.clusters[0].results != ()
    assert response.clusters[1].results == ()


def test_every_cluster_failing_raises_with_reports():
    cq = _cq("bank", "financial institution", "bank financial institution")
    failed = [
        make_page("e1", [], status=PageStatus.TIMEOUT, elapsed_ms=1000),
        make_page("e2", [], status=PageStatus.TRANSPORT_ERROR, elapsed_ms=3),
    ]
    with pytest.raises(AllProvidersFailedError) as err:
        cluster_and_aggregate([(cq, failed)])
    statuses = {r.provider: r.status for r in err.value.provider_status}
    assert statuses == {"e1": PageStatus.TIMEOUT, "e2": PageStatus.TRANSPORT_ERROR}


def test_provider_failure_report_keeps_first_observed_status():
    cq1 = _cq("bank", "financial institution", "bank financial institution")
    cq2 = _cq("bank", "rely upon", "bank rely upon")
    pages1 = [make_page("e1", [], status=PageStatus.TIMEOUT), make_page("e2", [_url("A")])]
    pages2 = [make_page("e1", [], status=PageStatus.PARSE_ERROR), make_page("e2", [_url("A")])]
    response = cluster_and_aggregate([(cq1, pages1), (cq2, pages2)])
    reports = {r.provider: r for r in response.provider_status}
    assert reports["e1"].status is PageStatus.TIMEOUT


def test_cluster_and_aggregate_requires_input():
    with pytest.raises(ValueError):
        cluster_and_aggregate([])


def test_cluster_and_aggregate_rejects_bare_strings():
    with pytest.raises(TypeError):
        cluster_and_aggregate([("not a cluster query", [])])


def test_shared_url_across_clusters_is_not_deduplicated():
    cq1 = _cq("bank", "financial institution", "bank financial institution")
    cq2 = _cq("bank", "sides of a water body", "bank sides water body")
    shared = _pages(("e1", ["A"]))
    response = cluster_and_aggregate([(cq1, shared), (cq2, shared)])
    assert response.clusters[0].results[0].url == _url("A")
    assert response.clusters[1].results[0].url == _url("A")


def test_large_random_instance_matches_oracle():
    rng = random.Random(42)
    url_pool = [f"https://pool{i:03d}.example/item" for i in range(120)]
    engine_lists = []
    for e in range(8):
        size = rng.randint(0, 60)
        engine_lists.append((f"engine{e}", [rng.choice(url_pool) for _ in range(size)]))
    if not any(urls for _, urls in engine_lists):  # keep the instance aggregatable
        engine_lists[0] = ("engine0", [url_pool[0]])
    results = aggregate([make_page(e, urls) for e, urls in engine_lists])
    assert [(r.url, r.count, r.best_rank) for r in results] == fuse_oracle(engine_lists)
