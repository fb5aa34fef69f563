"""HTTP/JSON service: search, subgraph, article detail, recommend, ingest.

Read paths share one immutable (graph, embeddings) snapshot; ingestion
builds a new graph off to the side and swaps the snapshot atomically, so a
reader sees either the old graph or the complete new one.  At most one
ingest runs at a time.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .embeddings import EmbeddingTable, load_embeddings
from .errors import LitkgError
from .extraction import Gazetteer, MENTIONS_RELATION, PosLexicon, ingest_article
from .graph import ArticleRecord, Entity, KnowledgeGraph, Triplet

DEFAULT_ADDR = "127.0.0.1:8080"


@dataclass
class Snapshot:
    graph: KnowledgeGraph
    embeddings: EmbeddingTable | None


class ServiceState:
    def __init__(
        self,
        graph: KnowledgeGraph,
        embeddings: EmbeddingTable | None = None,
        gazetteer: Gazetteer | None = None,
        lexicon: PosLexicon | None = None,
    ) -> None:
        self._snapshot = Snapshot(graph, embeddings)
        self.gazetteer = gazetteer
        self.lexicon = lexicon
        self._ingest_lock = threading.Lock()

    @property
    def snapshot(self) -> Snapshot:
        return self._snapshot

    def swap(self, snapshot: Snapshot) -> None:
        self._snapshot = snapshot


def build_state(
    store_dir: str | Path | None,
    gazetteer_path: str | Path | None = None,
    lexicon_path: str | Path | None = None,
    embeddings_path: str | Path | None = None,
) -> ServiceState:
    graph = KnowledgeGraph.load(store_dir) if store_dir else KnowledgeGraph()
    embeddings = load_embeddings(embeddings_path)[0] if embeddings_path else None
    gazetteer = Gazetteer.from_tsv(gazetteer_path) if gazetteer_path else None
    lexicon = PosLexicon.from_tsv(lexicon_path) if lexicon_path else None
    return ServiceState(graph, embeddings, gazetteer, lexicon)


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"http_status": status, "code": code, "message": message},
    )


def _parse_int(raw: str | None, default: int, lo: int, hi: int, name: str) -> int:
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise _ParamError(f"{name} must be an integer, got {raw!r}")
    if value < lo:
        raise _ParamError(f"{name} must be >= {lo}")
    return min(value, hi)


class _ParamError(Exception):
    pass


def _node_payload(entity: Entity) -> dict:
    return {
        "id": entity.id,
        "kind": entity.kind,
        "name": entity.display_name,
        "type": entity.term_type,
    }


def _edge_payload(triplet: Triplet) -> dict:
    return {
        "head": triplet.head,
        "relation": triplet.relation,
        "tail": triplet.tail,
        "provenance": [{"pmid": p, "sentence": s} for p, s in triplet.provenance],
    }


def _resolve(graph: KnowledgeGraph, q: str) -> int | None:
    hits = graph.find_entities(q, limit=1)
    return hits[0][0] if hits else None


def create_app(state: ServiceState, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="litkg", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.litkg = state

    @app.exception_handler(_ParamError)
    async def param_error(_: Request, exc: _ParamError):
        return _error(400, "BAD_QUERY", str(exc))

    @app.exception_handler(Exception)
    async def internal_error(_: Request, exc: Exception):
        return _error(500, "INTERNAL", f"{type(exc).__name__}: {exc}")

    @app.get("/api/search")
    async def search(q: str = "", limit: str | None = None):
        text = q.strip()
        if not text:
            return _error(400, "BAD_QUERY", "query parameter q must be nonempty")
        n = _parse_int(limit, default=10, lo=1, hi=100, name="limit")
        graph = state.snapshot.graph
        results = []
        for eid, tier in graph.find_entities(text, limit=n):
            entity = graph.entity(eid)
            results.append(
                {
                    "id": entity.id,
                    "kind": entity.kind,
                    "name": entity.display_name,
                    "type": entity.term_type,
                    "tier": tier,
                }
            )
        return results

    @app.get("/api/subgraph")
    async def subgraph(q: str = "", radius: str | None = None, max_nodes: str | None = None):
        text = q.strip()
        if not text:
            return _error(400, "BAD_QUERY", "query parameter q must be nonempty")
        r = _parse_int(radius, default=1, lo=1, hi=3, name="radius")
        cap = _parse_int(max_nodes, default=50, lo=1, hi=500, name="max_nodes")
        graph = state.snapshot.graph
        center = _resolve(graph, text)
        if center is None:
            return _error(404, "NOT_FOUND", f"no entity matches {text!r}")
        sub = graph.ego_subgraph(center, radius=r, max_nodes=cap)
        return {
            "center": sub.center,
            "nodes": [_node_payload(n) for n in sub.nodes],
            "edges": [_edge_payload(e) for e in sub.edges],
            "truncated": sub.truncated,
        }

    @app.get("/api/article/{pmid}")
    async def article(pmid: str):
        if not pmid.isdigit():
            return _error(400, "BAD_QUERY", f"pmid must be digits, got {pmid!r}")
        graph = state.snapshot.graph
        eid = graph.article_id(pmid)
        if eid is None:
            return _error(404, "NOT_FOUND", f"no article with pmid {pmid}")
        record = graph.article(pmid)
        terms = []
        for triplet, direction in graph.neighbors(eid):
            if direction == "outgoing" and triplet.relation == MENTIONS_RELATION:
                term = graph.entity(triplet.tail)
                terms.append(
                    {"id": term.id, "name": term.display_name, "type": term.term_type}
                )
        return {
            "pmid": record.pmid,
            "title": record.title,
            "abstract": record.abstract,
            "terms": terms,
        }

    @app.get("/api/recommend")
    async def recommend_endpoint(q: str = "", k: str | None = None):
        from .recommender import recommend

        text = q.strip()
        if not text:
            return _error(400, "BAD_QUERY", "query parameter q must be nonempty")
        top_k = _parse_int(k, default=10, lo=1, hi=50, name="k")
        snapshot = state.snapshot
        query = _resolve(snapshot.graph, text)
        if query is None:
            return _error(404, "NOT_FOUND", f"no entity matches {text!r}")
        results = []
        for rec in recommend(snapshot.embeddings, snapshot.graph, query, top_k):
            entity = snapshot.graph.entity(rec.entity_id)
            results.append(
                {
                    "id": entity.id,
                    "kind": rec.kind,
                    "name": entity.display_name,
                    "score": rec.score,
                }
            )
        return results

    @app.post("/api/ingest")
    async def ingest(request: Request):
        if state.gazetteer is None or state.lexicon is None:
            return _error(
                400, "INGEST_FAILED", "server started without a gazetteer/lexicon"
            )
        body = (await request.body()).decode("utf-8", errors="replace")
        records: list[ArticleRecord] = []
        for lineno, line in enumerate(body.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                record = ArticleRecord(
                    pmid=obj["pmid"], title=obj["title"], abstract=obj["abstract"]
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                return _error(400, "INGEST_FAILED", f"line {lineno}: {exc}")
            if not isinstance(record.pmid, str) or not record.pmid.isdigit():
                return _error(400, "INGEST_FAILED", f"line {lineno}: bad pmid {record.pmid!r}")
            records.append(record)
        if not state._ingest_lock.acquire(blocking=False):
            return _error(409, "INGEST_FAILED", "another ingest is in progress")
        try:
            old = state.snapshot
            graph = old.graph.copy()
            triplets_before = graph.stats()[2]
            for record in records:
                try:
                    ingest_article(graph, record, state.gazetteer, state.lexicon)
                except LitkgError as exc:
                    return _error(400, "INGEST_FAILED", f"pmid {record.pmid}: {exc}")
            state.swap(Snapshot(graph, old.embeddings))
            return {
                "articles_added": len(records),
                "triplets_added": graph.stats()[2] - triplets_before,
            }
        finally:
            state._ingest_lock.release()

    @app.get("/api/health")
    async def health():
        snapshot = state.snapshot
        n_terms, n_articles, n_triplets = snapshot.graph.stats()
        return {
            "status": "ok",
            "n_terms": n_terms,
            "n_articles": n_articles,
            "n_triplets": n_triplets,
            "embeddings_loaded": snapshot.embeddings is not None,
        }

    return app
