"""Runtime configuration: one TOML file, overridable by environment variables.

Defaults run entirely from bundled data: the packaged sense inventory, the
packaged corpus, and three simulated providers that rank it with different
scoring modes (so their pages genuinely disagree and fusion has work to do).
A config file adjusts paths, cache and history parameters, and the provider
registry; SENSESEARCH_* environment variables override scalar settings on
top of the file.
"""

import os
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Mapping

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .cache import DEFAULT_CAPACITY, DEFAULT_TTL_MS
from .errors import ConfigError
from .expansion import ExpansionStrategy
from .history import DEFAULT_HALF_LIFE_MS
from .providers import DEFAULT_SLACK_MS, ProviderDescriptor, ProviderKind
from .simengine import RankingMode

ENV_PREFIX = "SENSESEARCH_"
DEFAULT_K = 10


def packaged_data_path(name: str) -> Path:
    return Path(str(resources.files("sensesearch") / "data" / name))


def default_providers() -> tuple:
    """Three simulated engines over the bundled corpus, one per ranking mode."""
    return (
        ProviderDescriptor("sim-tf", ProviderKind.SIMULATED, "", mode=RankingMode.TF),
        ProviderDescriptor("sim-tfidf", ProviderKind.SIMULATED, "", mode=RankingMode.TFIDF),
        ProviderDescriptor("sim-title", ProviderKind.SIMULATED, "", mode=RankingMode.TITLE_BOOST),
    )


@dataclass(frozen=True)
class AppConfig:
    dictionary_path: Path
    corpus_path: Path
    stopwords_path: Path | None = None
    default_k: int = DEFAULT_K
    strategy: ExpansionStrategy = ExpansionStrategy.CONCATENATED
    providers: tuple = ()
    cache_enabled: bool = True
    cache_ttl_ms: int = DEFAULT_TTL_MS
    cache_capacity: int = DEFAULT_CAPACITY
    cache_snapshot_path: Path | None = None
    history_path: Path | None = None
    half_life_ms: int = DEFAULT_HALF_LIFE_MS
    slack_ms: int = DEFAULT_SLACK_MS
    host: str = "127.0.0.1"
    port: int = 8080

    def __post_init__(self):
        if self.default_k < 1:
            raise ConfigError(f"default_k must be >= 1, got {self.default_k}")
        if self.cache_ttl_ms < 1 or self.cache_capacity < 1:
            raise ConfigError("cache ttl and capacity must be >= 1")
        if self.half_life_ms < 1:
            raise ConfigError(f"half_life_ms must be >= 1, got {self.half_life_ms}")
        if self.slack_ms < 0:
            raise ConfigError(f"slack_ms must be >= 0, got {self.slack_ms}")
        if not 0 < self.port < 65536:
            raise ConfigError(f"port out of range: {self.port}")


def default_config() -> AppConfig:
    return AppConfig(
        dictionary_path=packaged_data_path("senses.tsv"),
        corpus_path=packaged_data_path("corpus.jsonl"),
        providers=default_providers(),
    )


_KIND_ALIASES = {kind.value: kind for kind in ProviderKind}
_MODE_ALIASES = {mode.value: mode for mode in RankingMode}


def _parse_provider(table: Mapping, position: int) -> ProviderDescriptor:
    if not isinstance(table, Mapping):
        raise ConfigError(f"providers[{position}] must be a table")
    try:
        provider_id = table["id"]
    except KeyError:
        raise ConfigError(f"providers[{position}] is missing 'id'") from None
    kind_name = table.get("kind", "simulated")
    if kind_name not in _KIND_ALIASES:
        raise ConfigError(f"provider {provider_id!r}: unknown kind {kind_name!r}")
    mode_name = table.get("mode", "tfidf")
    if mode_name not in _MODE_ALIASES:
        raise ConfigError(f"provider {provider_id!r}: unknown mode {mode_name!r}")
    headers = table.get("headers", {})
    if not isinstance(headers, Mapping):
        raise ConfigError(f"provider {provider_id!r}: headers must be a table")
    try:
        return ProviderDescriptor(
            id=provider_id,
            kind=_KIND_ALIASES[kind_name],
            endpoint=table.get("endpoint", ""),
            timeout_ms=int(table.get("timeout_ms", 1000)),
            enabled=bool(table.get("enabled", True)),
            mode=_MODE_ALIASES[mode_name],
            headers=tuple(sorted(headers.items())),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"provider {provider_id!r}: {exc}") from exc


def _from_toml(document: Mapping, base: AppConfig) -> AppConfig:
    paths = document.get("paths", {})
    cache_section = document.get("cache", {})
    history_section = document.get("history", {})
    server = document.get("server", {})
    fanout = document.get("fanout", {})

    def path_or(current, section, key):
        value = section.get(key)
        return Path(value) if value is not None else current

    strategy = base.strategy
    if "strategy" in document:
        try:
            strategy = ExpansionStrategy(document["strategy"])
        except ValueError as exc:
            raise ConfigError(f"unknown strategy {document['strategy']!r}") from exc

    providers = base.providers
    if "providers" in document:
        entries = document["providers"]
        if not isinstance(entries, list) or not entries:
            raise ConfigError("providers must be a nonempty array of tables")
        providers = tuple(_parse_provider(entry, i) for i, entry in enumerate(entries))

    try:
        return replace(
            base,
            dictionary_path=path_or(base.dictionary_path, paths, "dictionary"),
            corpus_path=path_or(base.corpus_path, paths, "corpus"),
            stopwords_path=path_or(base.stopwords_path, paths, "stopwords"),
            default_k=int(document.get("k", base.default_k)),
            strategy=strategy,
            providers=providers,
            cache_enabled=bool(cache_section.get("enabled", base.cache_enabled)),
            cache_ttl_ms=int(cache_section.get("ttl_ms", base.cache_ttl_ms)),
            cache_capacity=int(cache_section.get("capacity", base.cache_capacity)),
            cache_snapshot_path=path_or(base.cache_snapshot_path, cache_section, "snapshot"),
            history_path=path_or(base.history_path, history_section, "path"),
            half_life_ms=int(history_section.get("half_life_ms", base.half_life_ms)),
            slack_ms=int(fanout.get("slack_ms", base.slack_ms)),
            host=str(server.get("host", base.host)),
            port=int(server.get("port", base.port)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc


_ENV_PATHS = {
    "DICTIONARY": "dictionary_path",
    "CORPUS": "corpus_path",
    "STOPWORDS": "stopwords_path",
    "HISTORY": "history_path",
    "CACHE_SNAPSHOT": "cache_snapshot_path",
}
_ENV_INTS = {
    "K": "default_k",
    "CACHE_TTL_MS": "cache_ttl_ms",
    "CACHE_CAPACITY": "cache_capacity",
    "HALF_LIFE_MS": "half_life_ms",
    "SLACK_MS": "slack_ms",
    "PORT": "port",
}


def _apply_env(config: AppConfig, env: Mapping[str, str]) -> AppConfig:
    updates = {}
    for suffix, field_name in _ENV_PATHS.items():
        value = env.get(ENV_PREFIX + suffix)
        if value:
            updates[field_name] = Path(value)
    for suffix, field_name in _ENV_INTS.items():
        value = env.get(ENV_PREFIX + suffix)
        if value:
            try:
                updates[field_name] = int(value)
            except ValueError as exc:
                raise ConfigError(f"{ENV_PREFIX}{suffix} must be an integer, got {value!r}") from exc
    if env.get(ENV_PREFIX + "STRATEGY"):
        raw = env[ENV_PREFIX + "STRATEGY"]
        try:
            updates["strategy"] = ExpansionStrategy(raw)
        except ValueError as exc:
            raise ConfigError(f"{ENV_PREFIX}STRATEGY: unknown strategy {raw!r}") from exc
    if env.get(ENV_PREFIX + "HOST"):
        updates["host"] = env[ENV_PREFIX + "HOST"]
    if env.get(ENV_PREFIX + "CACHE_ENABLED"):
        updates["cache_enabled"] = env[ENV_PREFIX + "CACHE_ENABLED"].lower() in ("1", "true", "yes", "on")
    return replace(config, **updates) if updates else config


def load_config(path: str | Path | None = None, env: Mapping[str, str] | None = None) -> AppConfig:
    """Build the effective configuration: defaults, then file, then environment."""
    config = default_config()
    if path is not None:
        file_path = Path(path)
        try:
            with file_path.open("rb") as handle:
                document = tomllib.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {file_path}: {exc}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML in {file_path}: {exc}") from exc
        config = _from_toml(document, config)
    return _apply_env(config, os.environ if env is None else env)
