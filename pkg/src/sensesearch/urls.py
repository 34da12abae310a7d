"""URL canonicalization.

Two engines rarely print the same page the same way; links have to be
normalized before the "same page" membership test in the aggregator makes
sense. Rules applied: lowercase scheme and host, drop default ports (80 for
http, 443 for https), drop the fragment, strip trailing slashes from non-root
paths. Percent-encoding and the query string are left untouched. The result
is a fixpoint: normalizing twice changes nothing.
"""

from urllib.parse import urlsplit, urlunsplit

from .errors import UrlNormalizationError

_DEFAULT_PORTS = {"http": 80, "https": 443}


def normalize_url(raw: str) -> str:
    text = raw.strip()
    if not text:
        raise UrlNormalizationError("empty URL")
    try:
        parts = urlsplit(text)
        port = parts.port  # validates that an explicit port is numeric
    except ValueError as exc:
        raise UrlNormalizationError(f"cannot parse URL {raw!r}: {exc}") from exc

    scheme = parts.scheme.lower()
    host = parts.hostname  # already lowercased by urlsplit
    if not scheme or not host:
        raise UrlNormalizationError(f"not an absolute URL: {raw!r}")
    if ":" in host:  # bare IPv6 address lost its brackets in .hostname
        host = f"[{host}]"

    netloc = host
    if port is not None and port != _DEFAULT_PORTS.get(scheme):
        netloc = f"{host}:{port}"
    if "@" in parts.netloc:
        userinfo = parts.netloc.rsplit("@", 1)[0]
        netloc = f"{userinfo}@{netloc}"

    path = parts.path
    if path.endswith("/") and len(path) > 1:
        path = path.rstrip("/") or "/"

    return urlunsplit((scheme, netloc, path, parts.query, ""))
