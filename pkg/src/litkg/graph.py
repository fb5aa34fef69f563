"""In-memory knowledge graph with adjacency indexes and file persistence.

Entities are either terminologies or articles; both live in one id space so
that embeddings and subgraphs can treat them uniformly.  Edges are directed
labeled triplets, deduplicated by (head, relation, tail), with provenance
pointing back to the source sentence.
"""

from __future__ import annotations

import copy
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    BadPmidError,
    CorruptStoreError,
    EmptyNameError,
    EmptyRelationError,
    SelfLoopError,
    UnknownEntityError,
)

TERM = "term"
ARTICLE = "article"

TERM_TYPES = ("disease", "gene", "drug", "chemical", "other")

SCHEMA_VERSION = 1

_WS = re.compile(r"\s+")


def normalize_name(text: str) -> str:
    """Lowercase, collapse internal whitespace, trim.  No stemming."""
    return _WS.sub(" ", text.strip()).lower()


@dataclass
class Entity:
    id: int
    kind: str  # TERM or ARTICLE
    canonical_name: str
    display_name: str
    term_type: str | None = None  # set for terms only


@dataclass
class ArticleRecord:
    pmid: str
    title: str
    abstract: str


@dataclass
class Triplet:
    head: int
    relation: str
    tail: int
    provenance: list[tuple[str, int]] = field(default_factory=list)


@dataclass
class Subgraph:
    nodes: list[Entity]
    edges: list[Triplet]
    center: int
    truncated: bool


def _check_pmid(pmid: str) -> str:
    if not pmid or not pmid.isdigit():
        raise BadPmidError(f"pmid must be nonempty digits, got {pmid!r}")
    return pmid


class KnowledgeGraph:
    """Entity table + adjacency + name index + persistence.

    Safe for many concurrent readers or one exclusive writer; the service
    layer serves immutable snapshots and swaps them atomically.
    """

    def __init__(self) -> None:
        self._entities: dict[int, Entity] = {}
        self._articles: dict[str, ArticleRecord] = {}
        self._term_index: dict[str, int] = {}
        self._article_index: dict[str, int] = {}
        self._triplets: list[Triplet] = []
        self._edge_index: dict[tuple[int, str, int], int] = {}
        self._out: dict[int, list[int]] = {}
        self._in: dict[int, list[int]] = {}
        self._next_id = 0

    # -- entity management ---------------------------------------------------

    def upsert_term(self, name: str, term_type: str) -> int:
        """Create a term entity, or return the existing one with the same
        canonical name (the existing entity's term_type wins)."""
        canonical = normalize_name(name)
        if not canonical:
            raise EmptyNameError(f"term name is empty after normalization: {name!r}")
        if term_type not in TERM_TYPES:
            raise ValueError(f"unknown term type {term_type!r}")
        existing = self._term_index.get(canonical)
        if existing is not None:
            return existing
        eid = self._allocate_id()
        self._entities[eid] = Entity(
            id=eid,
            kind=TERM,
            canonical_name=canonical,
            display_name=name.strip(),
            term_type=term_type,
        )
        self._term_index[canonical] = eid
        return eid

    def upsert_article(self, record: ArticleRecord) -> int:
        """Create or replace an article node.

        On replace, this pmid's provenance entries are stripped from every
        triplet and triplets left without provenance are dropped, so that
        re-ingesting the same article is idempotent.
        """
        pmid = _check_pmid(record.pmid)
        existing = self._article_index.get(pmid)
        if existing is not None:
            self._articles[pmid] = ArticleRecord(pmid, record.title, record.abstract)
            self._strip_provenance(pmid)
            return existing
        eid = self._allocate_id()
        self._entities[eid] = Entity(
            id=eid, kind=ARTICLE, canonical_name=pmid, display_name=pmid
        )
        self._article_index[pmid] = eid
        self._articles[pmid] = ArticleRecord(pmid, record.title, record.abstract)
        return eid

    def _allocate_id(self) -> int:
        eid = self._next_id
        self._next_id += 1
        return eid

    def _strip_provenance(self, pmid: str) -> None:
        kept: list[Triplet] = []
        for t in self._triplets:
            t.provenance = [p for p in t.provenance if p[0] != pmid]
            if t.provenance:
                kept.append(t)
        if len(kept) != len(self._triplets):
            self._triplets = kept
            self._rebuild_edge_indexes()

    def _rebuild_edge_indexes(self) -> None:
        self._edge_index = {}
        self._out = {}
        self._in = {}
        for pos, t in enumerate(self._triplets):
            self._edge_index[(t.head, t.relation, t.tail)] = pos
            self._out.setdefault(t.head, []).append(pos)
            self._in.setdefault(t.tail, []).append(pos)

    # -- edges ----------------------------------------------------------------

    def add_triplet(
        self, head: int, relation: str, tail: int, prov: tuple[str, int]
    ) -> None:
        """Add a directed edge, or append provenance if it already exists."""
        self._require(head)
        self._require(tail)
        rel = normalize_name(relation)
        if not rel:
            raise EmptyRelationError(f"relation is empty after normalization: {relation!r}")
        if head == tail:
            raise SelfLoopError(f"self-loop on entity {head}")
        key = (head, rel, tail)
        pos = self._edge_index.get(key)
        if pos is not None:
            self._triplets[pos].provenance.append((prov[0], prov[1]))
            return
        pos = len(self._triplets)
        self._triplets.append(Triplet(head, rel, tail, [(prov[0], prov[1])]))
        self._edge_index[key] = pos
        self._out.setdefault(head, []).append(pos)
        self._in.setdefault(tail, []).append(pos)

    def _require(self, eid: int) -> Entity:
        ent = self._entities.get(eid)
        if ent is None:
            raise UnknownEntityError(f"no entity with id {eid}")
        return ent

    # -- lookups ----------------------------------------------------------------

    def entity(self, eid: int) -> Entity:
        return self._require(eid)

    def has_entity(self, eid: int) -> bool:
        return eid in self._entities

    def entities(self) -> list[Entity]:
        return [self._entities[i] for i in sorted(self._entities)]

    def entity_ids(self) -> list[int]:
        return sorted(self._entities)

    def term_id(self, canonical: str) -> int | None:
        return self._term_index.get(canonical)

    def article_id(self, pmid: str) -> int | None:
        return self._article_index.get(pmid)

    def article(self, pmid: str) -> ArticleRecord:
        rec = self._articles.get(pmid)
        if rec is None:
            raise UnknownEntityError(f"no article with pmid {pmid}")
        return rec

    def triplets(self) -> list[Triplet]:
        return list(self._triplets)

    def degree(self, eid: int) -> int:
        self._require(eid)
        return len(self._out.get(eid, ())) + len(self._in.get(eid, ()))

    def find_entities(self, query: str, limit: int = 10) -> list[tuple[int, int]]:
        """Match the normalized query against canonical names.

        Tier 0 = exact, 1 = prefix, 2 = substring; results ordered by
        (tier, canonical_name, id) and cut at `limit`.
        """
        if limit < 1:
            raise ValueError("limit must be positive")
        q = normalize_name(query)
        if not q:
            return []
        hits: list[tuple[int, str, int]] = []
        for eid, ent in self._entities.items():
            name = ent.canonical_name
            if name == q:
                tier = 0
            elif name.startswith(q):
                tier = 1
            elif q in name:
                tier = 2
            else:
                continue
            hits.append((tier, name, eid))
        hits.sort()
        return [(eid, tier) for tier, _, eid in hits[:limit]]

    def neighbors(self, eid: int) -> list[tuple[Triplet, str]]:
        """All incident edges with an outgoing/incoming tag, in triplet
        insertion order."""
        self._require(eid)
        tagged = [(pos, "outgoing") for pos in self._out.get(eid, ())]
        tagged += [(pos, "incoming") for pos in self._in.get(eid, ())]
        tagged.sort()
        return [(self._triplets[pos], direction) for pos, direction in tagged]

    def ego_subgraph(self, center: int, radius: int, max_nodes: int) -> Subgraph:
        """Breadth-first ball around `center` over undirected adjacency.

        Candidates keep BFS-layer order; within a layer, degree-descending
        then id-ascending.  When they exceed max_nodes the tail is cut and
        truncated is set.  Edges are all graph edges with both ends kept.
        """
        self._require(center)
        if radius < 1:
            raise ValueError("radius must be >= 1")
        if max_nodes < 1:
            raise ValueError("max_nodes must be >= 1")
        visited = {center}
        ordered = [center]
        frontier = [center]
        for _ in range(radius):
            layer = set()
            for eid in frontier:
                for pos in self._out.get(eid, ()):
                    other = self._triplets[pos].tail
                    if other not in visited:
                        layer.add(other)
                for pos in self._in.get(eid, ()):
                    other = self._triplets[pos].head
                    if other not in visited:
                        layer.add(other)
            if not layer:
                break
            frontier = sorted(layer, key=lambda e: (-self.degree(e), e))
            visited.update(layer)
            ordered.extend(frontier)
        truncated = len(ordered) > max_nodes
        kept = ordered[:max_nodes]
        kept_set = set(kept)
        edges = [
            t for t in self._triplets if t.head in kept_set and t.tail in kept_set
        ]
        nodes = [self._entities[e] for e in kept]
        return Subgraph(nodes=nodes, edges=edges, center=center, truncated=truncated)

    def stats(self) -> tuple[int, int, int]:
        """(n_terms, n_articles, n_triplets)."""
        return (len(self._term_index), len(self._article_index), len(self._triplets))

    def copy(self) -> "KnowledgeGraph":
        return copy.deepcopy(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            self._entities == other._entities
            and self._articles == other._articles
            and self._triplets == other._triplets
            and self._next_id == other._next_id
        )

    # -- persistence -----------------------------------------------------------

    def save(self, path: str | Path) -> None:
        """Write the store directory: entities.jsonl, articles.jsonl,
        triplets.jsonl, meta.json."""
        root = Path(path)
        root.mkdir(parents=True, exist_ok=True)
        with (root / "entities.jsonl").open("w", encoding="utf-8") as fh:
            for ent in self.entities():
                fh.write(
                    json.dumps(
                        {
                            "id": ent.id,
                            "kind": ent.kind,
                            "canonical_name": ent.canonical_name,
                            "display_name": ent.display_name,
                            "term_type": ent.term_type,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
        with (root / "articles.jsonl").open("w", encoding="utf-8") as fh:
            for pmid in sorted(self._articles, key=lambda p: self._article_index[p]):
                rec = self._articles[pmid]
                fh.write(
                    json.dumps(
                        {"pmid": rec.pmid, "title": rec.title, "abstract": rec.abstract},
                        ensure_ascii=False,
                    )
                    + "\n"
                )
        with (root / "triplets.jsonl").open("w", encoding="utf-8") as fh:
            for t in self._triplets:
                fh.write(
                    json.dumps(
                        {
                            "head": t.head,
                            "relation": t.relation,
                            "tail": t.tail,
                            "provenance": [
                                {"pmid": p, "sentence": s} for p, s in t.provenance
                            ],
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
        meta = {"schema_version": SCHEMA_VERSION, "max_id": self._next_id - 1}
        (root / "meta.json").write_text(json.dumps(meta), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "KnowledgeGraph":
        """Load a directory produced by save(); validates integrity."""
        root = Path(path)
        try:
            meta = json.loads((root / "meta.json").read_text(encoding="utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise CorruptStoreError(f"meta.json unreadable: {exc}") from exc
        if meta.get("schema_version") != SCHEMA_VERSION:
            raise CorruptStoreError(
                f"unsupported schema_version {meta.get('schema_version')!r}"
            )
        max_id = meta.get("max_id")
        if not isinstance(max_id, int):
            raise CorruptStoreError("meta.json missing integer max_id")

        g = cls()
        for obj in _read_jsonl(root / "entities.jsonl"):
            try:
                ent = Entity(
                    id=obj["id"],
                    kind=obj["kind"],
                    canonical_name=obj["canonical_name"],
                    display_name=obj["display_name"],
                    term_type=obj.get("term_type"),
                )
            except KeyError as exc:
                raise CorruptStoreError(f"entity missing field {exc}") from exc
            if ent.kind not in (TERM, ARTICLE):
                raise CorruptStoreError(f"entity {ent.id} has bad kind {ent.kind!r}")
            if ent.id in g._entities:
                raise CorruptStoreError(f"duplicate entity id {ent.id}")
            if ent.id > max_id:
                raise CorruptStoreError(f"entity id {ent.id} exceeds max_id {max_id}")
            g._entities[ent.id] = ent
            if ent.kind == TERM:
                if ent.canonical_name in g._term_index:
                    raise CorruptStoreError(
                        f"duplicate term canonical name {ent.canonical_name!r}"
                    )
                if ent.term_type not in TERM_TYPES:
                    raise CorruptStoreError(
                        f"term {ent.id} has bad term_type {ent.term_type!r}"
                    )
                g._term_index[ent.canonical_name] = ent.id
            else:
                g._article_index[ent.canonical_name] = ent.id

        for obj in _read_jsonl(root / "articles.jsonl"):
            try:
                rec = ArticleRecord(obj["pmid"], obj["title"], obj["abstract"])
            except KeyError as exc:
                raise CorruptStoreError(f"article missing field {exc}") from exc
            if rec.pmid not in g._article_index:
                raise CorruptStoreError(f"article record {rec.pmid} has no entity")
            g._articles[rec.pmid] = rec
        for pmid in g._article_index:
            if pmid not in g._articles:
                raise CorruptStoreError(f"article entity {pmid} has no record")

        for obj in _read_jsonl(root / "triplets.jsonl"):
            try:
                head, rel, tail = obj["head"], obj["relation"], obj["tail"]
                prov = [(p["pmid"], p["sentence"]) for p in obj["provenance"]]
            except (KeyError, TypeError) as exc:
                raise CorruptStoreError(f"triplet malformed: {exc}") from exc
            if head not in g._entities or tail not in g._entities:
                raise CorruptStoreError(f"triplet ({head}, {rel!r}, {tail}) dangles")
            if head == tail:
                raise CorruptStoreError(f"triplet self-loop on {head}")
            if (head, rel, tail) in g._edge_index:
                raise CorruptStoreError(f"duplicate triplet ({head}, {rel!r}, {tail})")
            pos = len(g._triplets)
            g._triplets.append(Triplet(head, rel, tail, prov))
            g._edge_index[(head, rel, tail)] = pos
            g._out.setdefault(head, []).append(pos)
            g._in.setdefault(tail, []).append(pos)

        g._next_id = max_id + 1
        return g


def _read_jsonl(path: Path) -> list[dict]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise CorruptStoreError(f"missing store file {path.name}") from exc
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptStoreError(f"{path.name}:{lineno}: bad JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise CorruptStoreError(f"{path.name}:{lineno}: expected object")
        out.append(obj)
    return out
