"""Configuration layering: defaults, TOML file, environment overrides."""

from pathlib import Path

import pytest

from sensesearch.config import AppConfig, default_config, load_config, packaged_data_path
from sensesearch.errors import ConfigError
from sensesearch.expansion import ExpansionStrategy
from sensesearch.providers import ProviderKind
from sensesearch.simengine import RankingMode


def test_defaults_point_at_bundled_data():
    config = default_config()
    assert config.dictionary_path.exists()
    assert config.corpus_path.exists()
    assert config.default_k == 10
    assert config.strategy is ExpansionStrategy.CONCATENATED
    assert [p.id for p in config.providers] == ["sim-tf", "sim-tfidf", "sim-title"]
    assert [p.mode for p in config.providers] == [RankingMode.TF, RankingMode.TFIDF, RankingMode.TITLE_BOOST]
    assert all(p.kind is ProviderKind.SIMULATED for p in config.providers)
    assert config.cache_enabled is True


def test_packaged_data_path_resolves_inside_the_package():
    path = packaged_data_path("senses.tsv")
    assert path.name == "senses.tsv"
    assert path.is_file()


def test_load_config_without_file_equals_defaults():
    assert load_config(env={}) == default_config()


def test_toml_file_overrides_scalars_and_paths(tmp_path):
    config_file = tmp_path / "app.toml"
    config_file.write_text(
        """
k = 5
strategy = "meaning_only"

[paths]
dictionary = "custom/senses.tsv"

[cache]
enabled = false
ttl_ms = 60000
capacity = 16
snapshot = "snap.json"

[history]
path = "hist.jsonl"
half_life_ms = 1000

[fanout]
slack_ms = 50

[server]
host = "0.0.0.0"
port = 9000
""",
        encoding="utf-8",
    )
    config = load_config(config_file, env={})
    assert config.default_k == 5
    assert config.strategy is ExpansionStrategy.MEANING_ONLY
    assert config.dictionary_path == Path("custom/senses.tsv")
    assert config.corpus_path == default_config().corpus_path  # untouched key keeps its default
    assert config.cache_enabled is False
    assert config.cache_ttl_ms == 60000
    assert config.cache_capacity == 16
    assert config.cache_snapshot_path == Path("snap.json")
    assert config.history_path == Path("hist.jsonl")
    assert config.half_life_ms == 1000
    assert config.slack_ms == 50
    assert config.host == "0.0.0.0"
    assert config.port == 9000


def test_toml_provider_tables_replace_the_registry(tmp_path):
    config_file = tmp_path / "app.toml"
    config_file.write_text(
        """
[[providers]]
id = "web-main"
kind = "http_json"
endpoint = "https://engine.example/search?q={query}"
timeout_ms = 700
headers = { "User-Agent" = "sensesearch", "Accept" = "application/json" }

[[providers]]
id = "sim-local"
mode = "title_boost"
enabled = false
""",
        encoding="utf-8",
    )
    config = load_config(config_file, env={})
    assert len(config.providers) == 2
    web, sim = config.providers
    assert web.id == "web-main"
    assert web.kind is ProviderKind.HTTP_JSON
    assert web.timeout_ms == 700
    assert web.headers == (("Accept", "application/json"), ("User-Agent", "sensesearch"))
    assert sim.kind is ProviderKind.SIMULATED
    assert sim.mode is RankingMode.TITLE_BOOST
    assert sim.enabled is False


@pytest.mark.parametrize(
    "body,fragment",
    [
        ('providers = []', "nonempty"),
        ('[[providers]]\nkind = "http_json"', "missing 'id'"),
        ('[[providers]]\nid = "x"\nkind = "carrier-pigeon"', "unknown kind"),
        ('[[providers]]\nid = "x"\nmode = "page-rank"', "unknown mode"),
        ('strategy = "telepathy"', "unknown strategy"),
        ("k = 0", "default_k"),
        ("k = \"ten\"", "invalid config value"),
        ("[server]\nport = 99999", "port"),
    ],
)
def test_invalid_toml_values_raise_config_error(tmp_path, body, fragment):
    config_file = tmp_path / "app.toml"
    config_file.write_text(body, encoding="utf-8")
    with pytest.raises(ConfigError, match=fragment):
        load_config(config_file, env={})


def test_unreadable_or_invalid_file_raises(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.toml", env={})
    broken = tmp_path / "broken.toml"
    broken.write_text("k = ", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(broken, env={})


def test_env_overrides_file(tmp_path):
    config_file = tmp_path / "app.toml"
    config_file.write_text("k = 5\n[server]\nport = 9000", encoding="utf-8")
    env = {
        "SENSESEARCH_K": "7",
        "SENSESEARCH_PORT": "9001",
        "SENSESEARCH_HOST": "10.0.0.1",
        "SENSESEARCH_STRATEGY": "meaning_only",
        "SENSESEARCH_CACHE_ENABLED": "false",
        "SENSESEARCH_DICTIONARY": "/elsewhere/senses.tsv",
        "SENSESEARCH_HALF_LIFE_MS": "12345",
    }
    config = load_config(config_file, env=env)
    assert config.default_k == 7
    assert config.port == 9001
    assert config.host == "10.0.0.1"
    assert config.strategy is ExpansionStrategy.MEANING_ONLY
    assert config.cache_enabled is False
    assert config.dictionary_path == Path("/elsewhere/senses.tsv")
    assert config.half_life_ms == 12345


def test_cache_enabled_env_accepts_common_truthy_spellings():
    for raw, expected in [("1", True), ("true", True), ("YES", True), ("on", True), ("0", False), ("off", False)]:
        config = load_config(env={"SENSESEARCH_CACHE_ENABLED": raw})
        assert config.cache_enabled is expected, raw


def test_non_integer_env_value_raises():
    with pytest.raises(ConfigError, match="SENSESEARCH_K"):
        load_config(env={"SENSESEARCH_K": "lots"})


def test_irrelevant_env_keys_are_ignored():
    config = load_config(env={"PATH": "/usr/bin", "SENSESEARCH_UNKNOWN": "x"})
    assert config == default_config()


def test_app_config_validation():
    base = default_config()
    for field_name, bad in [
        ("default_k", 0),
        ("cache_ttl_ms", 0),
        ("cache_capacity", 0),
        ("half_life_ms", 0),
        ("slack_ms", -1),
        ("port", 0),
        ("port", 70000),
    ]:
        with pytest.raises(ConfigError):
            AppConfig(**{**base.__dict__, field_name: bad})
