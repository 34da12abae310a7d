"""Search providers: a uniform client over heterogeneous engines.

Each provider is described declaratively (kind, endpoint, timeout) and
produces a uniform EngineResultPage. Remote failures never raise: timeouts,
transport errors and unparseable payloads all come back as page statuses, so
partial aggregation can proceed. Payload parsing supports the three shapes a
result page commonly arrives in: a JSON object with a `results` array, an
HTML page with `class="result"` anchors, and RSS 2.0 items. The fixture
files under sensesearch/data/fixtures are the normative contract for these
parsers.
"""

import json
import urllib.error
import urllib.parse
import urllib.request
import xml.etree.ElementTree as ET
from concurrent.futures import Future, ThreadPoolExecutor, wait
from dataclasses import dataclass
from enum import Enum
from html.parser import HTMLParser
from typing import Callable, Mapping, Sequence

from .clock import SYSTEM_CLOCK
from .errors import ConfigError, PayloadParseError, UrlNormalizationError
from .model import EngineResultPage, PageStatus, ResultLink
from .simengine import Index, RankingMode, search_index
from .urls import normalize_url

DEFAULT_RESULT_CAP = 20
DEFAULT_SLACK_MS = 250

# transport(url, headers, timeout_s) -> bytes; injectable for tests
Transport = Callable[[str, Mapping[str, str], float], bytes]


class ProviderKind(Enum):
    SIMULATED = "simulated"
    HTTP_JSON = "http_json"
    HTTP_HTML = "http_html"
    HTTP_RSS = "http_rss"


@dataclass(frozen=True)
class ProviderDescriptor:
    id: str
    kind: ProviderKind
    endpoint: str
    timeout_ms: int = 1000
    enabled: bool = True
    # simulated engines only: which ranking flavour this "engine" runs
    mode: RankingMode = RankingMode.TFIDF
    headers: tuple = ()  # extra request headers as (name, value) pairs

    def __post_init__(self):
        if not self.id:
            raise ValueError("provider id must be nonempty")
        if self.timeout_ms < 1:
            raise ValueError(f"timeout_ms must be >= 1, got {self.timeout_ms}")


def _decode_utf8(raw: bytes) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise PayloadParseError(
            f"payload is not valid UTF-8 at byte {exc.start}", location=f"byte {exc.start}"
        ) from exc


def _iter_json(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PayloadParseError(f"invalid JSON at byte {exc.pos}: {exc.msg}", location=f"byte {exc.pos}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("results"), list):
        raise PayloadParseError("expected a JSON object with a 'results' array", location="$.results")
    for i, item in enumerate(doc["results"]):
        if not isinstance(item, dict):
            raise PayloadParseError(f"results[{i}] is not an object", location=f"$.results[{i}]")
        url = item.get("url")
        if not isinstance(url, str):
            continue  # treated like an unparseable URL: dropped
        title = item.get("title")
        snippet = item.get("snippet")
        yield url, title if isinstance(title, str) else "", snippet if isinstance(snippet, str) else ""


class _ResultPageParser(HTMLParser):
    """Pulls (href, anchor text, following sibling snippet) triples out of a page."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.entries: list[list] = []  # [url, title, snippet]
        self._anchor_parts: list[str] | None = None
        self._anchor_href = ""
        self._snippet_parts: list[str] | None = None
        self._snippet_tag = ""
        self._awaiting_snippet = False

    @staticmethod
    def _has_class(attrs, name):
        classes = dict(attrs).get("class") or ""
        return name in classes.split()

    def handle_starttag(self, tag, attrs):
        if tag == "a" and self._has_class(attrs, "result"):
            self._anchor_href = dict(attrs).get("href") or ""
            self._anchor_parts = []
            self._awaiting_snippet = False
        elif self._awaiting_snippet and self._snippet_parts is None and self._has_class(attrs, "snippet"):
            self._snippet_parts = []
            self._snippet_tag = tag

    def handle_endtag(self, tag):
        if tag == "a" and self._anchor_parts is not None:
            title = " ".join("".join(self._anchor_parts).split())
            self.entries.append([self._anchor_href, title, ""])
            self._anchor_parts = None
            self._awaiting_snippet = True
        elif self._snippet_parts is not None and tag == self._snippet_tag:
            self.entries[-1][2] = " ".join("".join(self._snippet_parts).split())
            self._snippet_parts = None
            self._awaiting_snippet = False

    def handle_data(self, data):
        if self._anchor_parts is not None:
            self._anchor_parts.append(data)
        elif self._snippet_parts is not None:
            self._snippet_parts.append(data)


def _iter_html(text: str):
    parser = _ResultPageParser()
    parser.feed(text)
    parser.close()
    yield from ((url, title, snippet) for url, title, snippet in parser.entries)


def _iter_rss(text: str):
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line, column = exc.position
        raise PayloadParseError(f"invalid XML at line {line}, column {column}", location=f"line {line}") from exc
    for item in root.iter("item"):
        url = (item.findtext("link") or "").strip()
        title = " ".join((item.findtext("title") or "").split())
        snippet = " ".join((item.findtext("description") or "").split())
        yield url, title, snippet


_PARSERS = {
    ProviderKind.HTTP_JSON: _iter_json,
    ProviderKind.HTTP_HTML: _iter_html,
    ProviderKind.HTTP_RSS: _iter_rss,
}


def parse_results(raw: bytes, kind: ProviderKind, provider_id: str, limit: int = DEFAULT_RESULT_CAP) -> list[ResultLink]:
    """Convert a raw payload into at most `limit` ranked links.

    Entries whose URL cannot be normalized are dropped; the survivors get
    contiguous ranks 1..n in document order.
    """
    if kind not in _PARSERS:
        raise ValueError(f"no parser for provider kind {kind}")
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    text = _decode_utf8(raw)
    links = []
    for url, title, snippet in _PARSERS[kind](text):
        try:
            normalized = normalize_url(url)
        except UrlNormalizationError:
            continue
        links.append(ResultLink(normalized, title, snippet, provider_id, rank=len(links) + 1))
        if len(links) >= limit:
            break
    return links


def _urllib_transport(url: str, headers: Mapping[str, str], timeout_s: float) -> bytes:
    request = urllib.request.Request(url, headers=dict(headers))
    with urllib.request.urlopen(request, timeout=timeout_s) as response:
        return response.read()


def _build_url(endpoint: str, query: str) -> str:
    quoted = urllib.parse.quote_plus(query)
    if "{query}" in endpoint:
        return endpoint.replace("{query}", quoted)
    separator = "&" if "?" in endpoint else "?"
    return f"{endpoint}{separator}q={quoted}"


def query_provider(
    descriptor: ProviderDescriptor,
    query: str,
    k: int = DEFAULT_RESULT_CAP,
    *,
    index: Index | None = None,
    clock=SYSTEM_CLOCK,
    transport: Transport | None = None,
) -> EngineResultPage:
    """Run one query against one provider; failures become page statuses."""
    if not descriptor.enabled:
        raise ValueError(f"provider {descriptor.id} is disabled")
    if not query.strip():
        raise ValueError("query must be nonempty")

    start = clock.monotonic_ms()

    def _page(links=(), status=PageStatus.OK):
        elapsed = int(clock.monotonic_ms() - start)
        return EngineResultPage(descriptor.id, query, tuple(links), elapsed, status)

    if descriptor.kind is ProviderKind.SIMULATED:
        if index is None:
            raise ConfigError(f"simulated provider {descriptor.id} needs an index")
        return _page(search_index(index, query, descriptor.mode, k, source=descriptor.id))

    fetch = transport or _urllib_transport
    url = _build_url(descriptor.endpoint, query)
    try:
        raw = fetch(url, dict(descriptor.headers), descriptor.timeout_ms / 1000.0)
    except urllib.error.HTTPError:
        return _page(status=PageStatus.TRANSPORT_ERROR)
    except urllib.error.URLError as exc:
        if isinstance(exc.reason, TimeoutError):
            return _page(status=PageStatus.TIMEOUT)
        return _page(status=PageStatus.TRANSPORT_ERROR)
    except TimeoutError:
        return _page(status=PageStatus.TIMEOUT)
    except (ConnectionError, OSError):
        return _page(status=PageStatus.TRANSPORT_ERROR)

    try:
        return _page(parse_results(raw, descriptor.kind, descriptor.id, limit=k))
    except PayloadParseError:
        return _page(status=PageStatus.PARSE_ERROR)


def _timeout_page(descriptor: ProviderDescriptor, query: str) -> EngineResultPage:
    return EngineResultPage(descriptor.id, query, (), descriptor.timeout_ms, PageStatus.TIMEOUT)


def fan_out(
    registry: Sequence[ProviderDescriptor],
    query: str,
    k: int = DEFAULT_RESULT_CAP,
    *,
    index: Index | None = None,
    clock=SYSTEM_CLOCK,
    slack_ms: int = DEFAULT_SLACK_MS,
    transport: Transport | None = None,
) -> list[EngineResultPage]:
    """Query every enabled provider concurrently; one page each, registry order.

    The join waits at most max(timeout_ms) + slack_ms overall, so one stalled
    provider cannot hold back the rest: whatever has not finished by then is
    reported as a timeout page.
    """
    pages = fan_out_many(registry, [query], k, index=index, clock=clock, slack_ms=slack_ms, transport=transport)
    return pages[0]


def fan_out_many(
    registry: Sequence[ProviderDescriptor],
    queries: Sequence[str],
    k: int = DEFAULT_RESULT_CAP,
    *,
    index: Index | None = None,
    clock=SYSTEM_CLOCK,
    slack_ms: int = DEFAULT_SLACK_MS,
    transport: Transport | None = None,
) -> list[list[EngineResultPage]]:
    """fan_out for several queries sharing one worker pool and one deadline.

    Used by the search pipeline so that all cluster queries together still
    finish within a single provider-timeout budget.
    """
    enabled = [d for d in registry if d.enabled]
    if not enabled:
        raise ConfigError("no enabled providers in the registry")
    if not queries:
        return []

    deadline_s = (max(d.timeout_ms for d in enabled) + slack_ms) / 1000.0
    tasks: dict[Future, tuple[int, int]] = {}
    executor = ThreadPoolExecutor(max_workers=min(len(enabled) * len(queries), 32))
    try:
        for qi, query in enumerate(queries):
            for pi, descriptor in enumerate(enabled):
                future = executor.submit(
                    query_provider, descriptor, query, k, index=index, clock=clock, transport=transport
                )
                tasks[future] = (qi, pi)
        done, not_done = wait(tasks, timeout=deadline_s)
    finally:
        # Abandon stragglers; their threads die with their socket timeouts.
        executor.shutdown(wait=False)

    results: list[list[EngineResultPage]] = [
        [_timeout_page(d, q) for d in enabled] for q in queries
    ]
    for future in done:
        qi, pi = tasks[future]
        results[qi][pi] = future.result()
    return results
