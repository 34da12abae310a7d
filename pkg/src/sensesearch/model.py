"""Wire types shared between the simulated engines, providers and aggregator."""

from dataclasses import dataclass, field
from enum import Enum


class PageStatus(Enum):
    OK = "ok"
    TIMEOUT = "timeout"
    PARSE_ERROR = "parse_error"
    TRANSPORT_ERROR = "transport_error"


@dataclass(frozen=True)
class ResultLink:
    """One parsed hit from one engine, with its 1-based position there."""

    url: str
    title: str
    snippet: str
    source_engine: str
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if not self.url:
            raise ValueError("url must be nonempty")


@dataclass(frozen=True)
class EngineResultPage:
    """Uniform result page for one provider; failures are a status, not an exception."""

    provider: str
    query: str
    links: tuple[ResultLink, ...] = ()
    elapsed_ms: int = 0
    status: PageStatus = PageStatus.OK

    def __post_init__(self):
        if self.status is not PageStatus.OK and self.links:
            raise ValueError(f"page with status {self.status.value} must carry no links")
        if self.status is PageStatus.OK:
            for pos, link in enumerate(self.links, start=1):
                if link.rank != pos:
                    raise ValueError(f"ranks must be contiguous 1..n, got {link.rank} at position {pos}")
