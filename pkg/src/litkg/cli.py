"""Operator command line: build stores, train embeddings, serve, query.

Exit codes: 0 success, 1 usage error, 2 data/config error, 3 runtime
failure.  Output is plain text with stable ordering and no timestamps, so
identical inputs give byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .embeddings import Hyperparams, load_embeddings, save_embeddings
from .errors import CorruptStoreError, InsufficientGraphError, LitkgError
from .extraction import Gazetteer, PosLexicon, ingest_article
from .graph import ArticleRecord, KnowledgeGraph
from .recommender import recommend, train

USAGE_ERROR = 1
DATA_ERROR = 2
RUNTIME_ERROR = 3


def _env_default(flag_value: str | None, env_var: str, default: str | None) -> str | None:
    """Config precedence: flag > environment variable > default."""
    if flag_value is not None:
        return flag_value
    return os.environ.get(env_var, default)


def _load_corpus(path: Path) -> list[ArticleRecord]:
    records = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            record = ArticleRecord(pmid=obj["pmid"], title=obj["title"], abstract=obj["abstract"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
        records.append(record)
    return records


def _print_stats(graph: KnowledgeGraph) -> None:
    n_terms, n_articles, n_triplets = graph.stats()
    print(f"articles={n_articles} terms={n_terms} triplets={n_triplets}")


def cmd_ingest(args: argparse.Namespace) -> int:
    try:
        gazetteer = Gazetteer.from_tsv(args.gazetteer)
        lexicon = PosLexicon.from_tsv(args.lexicon)
        records = _load_corpus(Path(args.corpus))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    graph = KnowledgeGraph()
    try:
        for record in records:
            ingest_article(graph, record, gazetteer, lexicon)
        graph.save(args.store_dir)
    except (LitkgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    _print_stats(graph)
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    if args.dim < 1 or args.epochs < 1 or args.triples_per_epoch < 1:
        print("error: --dim, --epochs and --triples-per-epoch must be positive", file=sys.stderr)
        return USAGE_ERROR
    if args.lr <= 0 or args.reg < 0:
        print("error: --lr must be > 0 and --lambda >= 0", file=sys.stderr)
        return USAGE_ERROR
    try:
        graph = KnowledgeGraph.load(args.store_dir)
    except (CorruptStoreError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    hp = Hyperparams(
        dim=args.dim,
        learning_rate=args.lr,
        reg=args.reg,
        epochs=args.epochs,
        triples_per_epoch=args.triples_per_epoch,
        rng_seed=args.seed,
    )
    def report(epoch: int, mean_log_sigmoid: float) -> None:
        print(f"epoch={epoch} mean_log_sigmoid={mean_log_sigmoid:.6f}")

    try:
        table = train(graph, hp, on_epoch=report)
    except InsufficientGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    try:
        save_embeddings(table, args.out, hp)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    print(f"saved {len(table)} rows to {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import DEFAULT_ADDR, build_state, create_app

    addr = _env_default(args.addr, "LITKG_ADDR", DEFAULT_ADDR)
    embeddings = _env_default(args.embeddings, "LITKG_EMBEDDINGS", None)
    gazetteer = _env_default(args.gazetteer, "LITKG_GAZETTEER", None)
    lexicon = _env_default(args.lexicon, "LITKG_LEXICON", None)
    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: bad address {addr!r}, want host:port", file=sys.stderr)
        return RUNTIME_ERROR
    try:
        state = build_state(args.store_dir, gazetteer, lexicon, embeddings)
    except (LitkgError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    app = create_app(state)
    try:
        uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: cannot serve on {addr}: {exc}", file=sys.stderr)
        return RUNTIME_ERROR
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    if args.radius < 1 or args.max_nodes < 1:
        print("error: --radius and --max-nodes must be positive", file=sys.stderr)
        return USAGE_ERROR
    try:
        graph = KnowledgeGraph.load(args.store_dir)
    except (CorruptStoreError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    hits = graph.find_entities(args.text, limit=1)
    if not hits:
        print(f"error: no entity matches {args.text!r}", file=sys.stderr)
        return DATA_ERROR
    sub = graph.ego_subgraph(hits[0][0], radius=args.radius, max_nodes=args.max_nodes)
    print(f"center: {graph.entity(sub.center).canonical_name}")
    print(f"truncated: {'true' if sub.truncated else 'false'}")
    print("nodes:")
    for node in sub.nodes:
        suffix = f" type={node.term_type}" if node.kind == "term" else ""
        print(f"  {node.kind} {node.canonical_name}{suffix}")
    print("edges:")
    for edge in sub.edges:
        head = graph.entity(edge.head).canonical_name
        tail = graph.entity(edge.tail).canonical_name
        print(f"  {head} -[{edge.relation}]-> {tail}")
    return 0


def cmd_recommend(args: argparse.Namespace) -> int:
    if args.k < 1:
        print("error: -k must be >= 1", file=sys.stderr)
        return USAGE_ERROR
    try:
        graph = KnowledgeGraph.load(args.store_dir)
    except (CorruptStoreError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    embeddings_path = _env_default(args.embeddings, "LITKG_EMBEDDINGS", None)
    table = None
    if embeddings_path:
        try:
            table, _ = load_embeddings(embeddings_path)
        except (CorruptStoreError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return DATA_ERROR
    hits = graph.find_entities(args.text, limit=1)
    if not hits:
        print(f"error: no entity matches {args.text!r}", file=sys.stderr)
        return DATA_ERROR
    for rank, rec in enumerate(recommend(table, graph, hits[0][0], args.k), start=1):
        name = graph.entity(rec.entity_id).canonical_name
        print(f"{rank} {rec.score:.6f} {rec.kind} {name}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        graph = KnowledgeGraph.load(args.store_dir)
    except (CorruptStoreError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    _print_stats(graph)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="litkg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build a graph store from a JSONL corpus")
    p.add_argument("corpus", help="corpus JSONL: {pmid, title, abstract} per line")
    p.add_argument("gazetteer", help="gazetteer TSV: term<TAB>type")
    p.add_argument("lexicon", help="POS lexicon TSV: token<TAB>tag")
    p.add_argument("store_dir", help="output store directory")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="train embeddings from a graph store")
    p.add_argument("store_dir")
    p.add_argument("out", help="output embeddings file")
    p.add_argument("--dim", type=int, default=16)
    p.add_argument("--lr", type=float, default=0.05)
    p.add_argument("--lambda", dest="reg", type=float, default=0.01)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--triples-per-epoch", type=int, default=500)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("store_dir")
    p.add_argument("--addr", default=None, help="host:port (default 127.0.0.1:8080)")
    p.add_argument("--embeddings", default=None)
    p.add_argument("--gazetteer", default=None)
    p.add_argument("--lexicon", default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("query", help="print the ego subgraph for a query")
    p.add_argument("store_dir")
    p.add_argument("text")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--max-nodes", type=int, default=50)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("recommend", help="print ranked query recommendations")
    p.add_argument("store_dir")
    p.add_argument("text")
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--embeddings", default=None)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("stats", help="print store counts")
    p.add_argument("store_dir")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage problems; map to this tool's convention
        return USAGE_ERROR if exc.code == 2 else int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
