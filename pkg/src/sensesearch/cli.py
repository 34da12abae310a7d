"""Terminal interface to every pipeline stage.

Subcommands: search (full pipeline), senses (dictionary lookup), index
(corpus stats), parse (payload parser debugging), providers (registry
listing), serve (HTTP service). Human-readable tables by default; --json
prints the exact bytes the HTTP service would send, which keeps scripted
consumers on one schema.

Exit codes: 0 success, 1 pipeline failure, 2 usage or configuration error.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .clock import SYSTEM_CLOCK, FixedClock
from .config import AppConfig, load_config
from .errors import ConfigError, SenseSearchError
from .expansion import ExpansionStrategy
from .providers import ProviderKind, parse_results
from .service import SearchService, to_json_bytes
from .simengine import index_corpus, load_corpus

_PARSE_KINDS = {
    "json": ProviderKind.HTTP_JSON,
    "html": ProviderKind.HTTP_HTML,
    "rss": ProviderKind.HTTP_RSS,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="TOML config file")
    common.add_argument("--json", action="store_true", help="print the service JSON body")
    common.add_argument("--k", type=int, default=None, metavar="N", help="results per provider")
    common.add_argument(
        "--strategy",
        choices=[s.value for s in ExpansionStrategy],
        default=None,
        help="cluster query construction strategy",
    )
    common.add_argument("--user", default="", metavar="ID", help="user id for history bias")

    parser = argparse.ArgumentParser(prog="sensesearch", description="sense-clustered metasearch")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    search = commands.add_parser("search", parents=[common], help="run a query through the pipeline")
    search.add_argument("query")
    search.add_argument("--no-cache", action="store_true", help="bypass the response cache")
    search.add_argument(
        "--fixed-clock",
        type=int,
        default=None,
        metavar="EPOCH_MS",
        help="freeze all timestamps, for reproducible output",
    )

    senses = commands.add_parser("senses", parents=[common], help="list dictionary senses")
    senses.add_argument("term")

    index = commands.add_parser("index", parents=[common], help="index a corpus and print stats")
    index.add_argument("corpus", metavar="CORPUS_PATH")

    parse = commands.add_parser("parse", parents=[common], help="parse a result-page fixture")
    parse.add_argument("path", metavar="FIXTURE_PATH")
    parse.add_argument("--kind", choices=sorted(_PARSE_KINDS), required=True)

    commands.add_parser("providers", parents=[common], help="list the provider registry")

    serve = commands.add_parser("serve", parents=[common], help="run the HTTP service")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)

    return parser


def _emit_json(payload) -> None:
    # Exactly the service body: no trailing newline, not ASCII-escaped.
    sys.stdout.buffer.write(to_json_bytes(payload))
    sys.stdout.buffer.flush()


def _load_config(args) -> AppConfig:
    if args.config is not None and not Path(args.config).is_file():
        raise ConfigError(f"config file not found: {args.config}")
    return load_config(args.config)


def _strategy(args) -> ExpansionStrategy | None:
    return ExpansionStrategy(args.strategy) if args.strategy else None


def cmd_search(args) -> int:
    config = _load_config(args)
    if args.no_cache:
        config = replace(config, cache_enabled=False)
    clock = FixedClock(args.fixed_clock) if args.fixed_clock is not None else SYSTEM_CLOCK
    service = SearchService(config, clock=clock)
    payload = service.search(args.query, k=args.k, user_id=args.user, strategy=_strategy(args))
    if args.json:
        _emit_json(payload)
        return 0
    print(f"query: {payload['query']}")
    print(f"reduced query: {payload['reduced_query']}")
    print(f"pivot word: {payload['pivot_word']}")
    for i, cluster in enumerate(payload["clusters"], start=1):
        sense = cluster["sense"]
        category = cluster["category"] or "-"
        print()
        print(f"[{i}] {sense['headword']} ({sense['pos']}): {sense['gloss']}")
        print(f"    cluster query: {cluster['cluster_query']}    category: {category}")
        for result in cluster["results"]:
            engines = ",".join(result["sources"])
            print(f"    {result['count']:>2}  {result['best_rank']:>3}  {result['url']}  [{engines}]")
    print()
    statuses = ", ".join(
        f"{r['provider']}={r['status']}({r['elapsed_ms']}ms)" for r in payload["provider_status"]
    )
    print(f"providers: {statuses}")
    return 0


def cmd_senses(args) -> int:
    service = SearchService(_load_config(args))
    payload = service.senses(args.term)
    if args.json:
        _emit_json(payload)
        return 0
    for sense in payload["senses"]:
        print(f"{sense['headword']}\t{sense['pos']}\t{sense['gloss']}")
    return 0


def cmd_index(args) -> int:
    documents = load_corpus(args.corpus)
    index = index_corpus(documents)
    if args.json:
        _emit_json({"documents": index.doc_count, "terms": len(index.postings)})
        return 0
    print(f"documents: {index.doc_count}")
    print(f"terms: {len(index.postings)}")
    return 0


def cmd_parse(args) -> int:
    try:
        raw = Path(args.path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read fixture {args.path}: {exc}") from exc
    links = parse_results(raw, _PARSE_KINDS[args.kind], provider_id=f"file:{args.kind}")
    if args.json:
        _emit_json(
            {
                "links": [
                    {"rank": l.rank, "url": l.url, "title": l.title, "snippet": l.snippet}
                    for l in links
                ]
            }
        )
        return 0
    for link in links:
        print(f"{link.rank}\t{link.url}\t{link.title}")
    return 0


def cmd_providers(args) -> int:
    service = SearchService(_load_config(args))
    payload = service.providers_payload()
    if args.json:
        _emit_json(payload)
        return 0
    for provider in payload["providers"]:
        flag = "enabled" if provider["enabled"] else "disabled"
        print(
            f"{provider['id']}\t{provider['kind']}\t{provider['mode']}"
            f"\t{provider['timeout_ms']}ms\t{flag}"
        )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = _load_config(args)
    if args.host is not None:
        config = replace(config, host=args.host)
    if args.port is not None:
        config = replace(config, port=args.port)
    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")
    return 0


_HANDLERS = {
    "search": cmd_search,
    "senses": cmd_senses,
    "index": cmd_index,
    "parse": cmd_parse,
    "providers": cmd_providers,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "search" and not args.query.strip():
        parser.error("query must be nonempty")
    if args.command == "senses" and not args.term.strip():
        parser.error("term must be nonempty")
    if args.k is not None and args.k < 1:
        parser.error("--k must be >= 1")
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SenseSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
