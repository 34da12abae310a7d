"""Shared fixtures: bundled data, a fixed clock, and page builders."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # makes `oracles` importable

from sensesearch.clock import FixedClock
from sensesearch.config import default_config, packaged_data_path
from sensesearch.dictionary import load_inventory
from sensesearch.model import EngineResultPage, PageStatus, ResultLink
from sensesearch.simengine import index_corpus, load_corpus

FIXED_NOW_MS = 1_700_000_000_000


@pytest.fixture(scope="session")
def inventory():
    return load_inventory(packaged_data_path("senses.tsv"), clock=FixedClock(FIXED_NOW_MS))


@pytest.fixture(scope="session")
def corpus_docs():
    return load_corpus(packaged_data_path("corpus.jsonl"))


@pytest.fixture(scope="session")
def corpus_index(corpus_docs):
    return index_corpus(corpus_docs)


@pytest.fixture
def fixed_clock():
    return FixedClock(FIXED_NOW_MS)


@pytest.fixture
def offline_config(tmp_path):
    """Default config with history kept inside the test's tmp dir."""
    from dataclasses import replace

    return replace(default_config(), history_path=tmp_path / "history.jsonl")


def make_page(provider, urls, status=PageStatus.OK, query="q", elapsed_ms=5):
    """EngineResultPage whose links are the given URLs ranked 1..n."""
    links = tuple(
        ResultLink(url=url, title=f"t{i}", snippet="", source_engine=provider, rank=i)
        for i, url in enumerate(urls, start=1)
    )
    return EngineResultPage(provider=provider, query=query, links=links, elapsed_ms=elapsed_ms, status=status)


def fixture_path(name: str) -> Path:
    return Path(packaged_data_path("fixtures")) / name
