"""Query recommendation: triple sampling, training, evaluation, serving.

Training samples preferences from the article-terminology network, runs
stochastic gradient ascent on the pairwise objective, and serving ranks
2-hop neighbors by the learned inner product (or by article co-occurrence
before a model exists).
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .embeddings import (
    EmbeddingTable,
    Hyperparams,
    TrainingTriple,
    log_sigmoid,
    score,
    sgd_step,
    sigmoid,
)
from .errors import EmptyHoldoutError, InsufficientGraphError, UnknownEntityError
from .extraction import MENTIONS_RELATION
from .graph import ARTICLE, KnowledgeGraph, TERM

_MAX_RETRIES = 50


class MentionIndex:
    """Article-terminology incidence extracted from the graph's "mentions"
    edges, with deterministic candidate orderings for sampling."""

    def __init__(self, graph: KnowledgeGraph) -> None:
        self.article_terms: dict[int, set[int]] = {}
        self.term_articles: dict[int, list[int]] = {}
        self.edges: list[tuple[int, int]] = []
        for t in graph.triplets():
            if t.relation != MENTIONS_RELATION:
                continue
            if graph.entity(t.head).kind != ARTICLE or graph.entity(t.tail).kind != TERM:
                continue
            self.edges.append((t.head, t.tail))
            self.article_terms.setdefault(t.head, set()).add(t.tail)
            self.term_articles.setdefault(t.tail, []).append(t.head)
        for articles in self.term_articles.values():
            articles.sort()
        self.term_ids = sorted(
            e.id for e in graph.entities() if e.kind == TERM
        )
        self.article_ids = sorted(
            e.id for e in graph.entities() if e.kind == ARTICLE
        )

    def links(self, article: int, entity: int) -> bool:
        """True when the article is the entity itself or mentions it."""
        return article == entity or entity in self.article_terms.get(article, ())

    def co_occurrence(self, a: int, b: int) -> int:
        """Number of articles linking both entities."""
        return sum(
            1
            for article in self.article_ids
            if self.links(article, a) and self.links(article, b)
        )

    def sample(self, rng: np.random.Generator) -> TrainingTriple | None:
        """Draw one triple, or None when the draw is unsatisfiable."""
        article, term = self.edges[int(rng.integers(len(self.edges)))]
        linked = self.article_terms[article]
        neg_candidates = [t for t in self.term_ids if t not in linked]
        if not neg_candidates:
            return None
        neg_term = neg_candidates[int(rng.integers(len(neg_candidates)))]
        pos_candidates = [a for a in self.term_articles[term] if a != article]
        if not pos_candidates:
            return None
        pos_article = pos_candidates[int(rng.integers(len(pos_candidates)))]
        neg_articles = self.term_articles.get(neg_term, [])
        if not neg_articles:
            return None
        neg_article = neg_articles[int(rng.integers(len(neg_articles)))]
        return TrainingTriple(article, term, neg_term, pos_article, neg_article)

    def sample_many(self, rng: np.random.Generator, count: int) -> list[TrainingTriple]:
        if not self.edges or len(self.article_ids) < 2 or len(self.term_ids) < 2:
            raise InsufficientGraphError(
                "need at least two articles and two terms with mentions edges"
            )
        out: list[TrainingTriple] = []
        failures = 0
        while len(out) < count:
            triple = self.sample(rng)
            if triple is None:
                failures += 1
                if failures > _MAX_RETRIES:
                    raise InsufficientGraphError(
                        f"no valid triple found after {_MAX_RETRIES} retries"
                    )
                continue
            failures = 0
            out.append(triple)
        return out


def sample_triples(
    graph: KnowledgeGraph, rng: np.random.Generator, count: int
) -> list[TrainingTriple]:
    """Uniformly sample `count` valid training triples from the graph."""
    return MentionIndex(graph).sample_many(rng, count)


def validate_triple(graph: KnowledgeGraph, triple: TrainingTriple) -> bool:
    """Check the four structural constraints a training triple must satisfy."""
    index = MentionIndex(graph)
    return (
        triple.term in index.article_terms.get(triple.article, ())
        and triple.neg_term not in index.article_terms.get(triple.article, ())
        and triple.pos_article != triple.article
        and triple.term in index.article_terms.get(triple.pos_article, ())
        and triple.neg_term in index.article_terms.get(triple.neg_article, ())
    )


def train(
    graph: KnowledgeGraph,
    hp: Hyperparams,
    on_epoch: Callable[[int, float], None] | None = None,
) -> EmbeddingTable:
    """Train embeddings by stochastic gradient ascent.

    One generator seeded with hp.rng_seed drives both initialization and
    sampling, so (seed, graph, hyperparams) fully determines the result.
    Rows are initialized Uniform(-init_scale, +init_scale) in ascending
    entity-id order.  on_epoch, when given, receives the mean ln sigma(score)
    of the epoch's triples measured against the epoch-start table, so the
    first value sits near ln 0.5 for a small init.
    """
    index = MentionIndex(graph)
    if not index.edges or len(index.article_ids) < 2 or len(index.term_ids) < 2:
        raise InsufficientGraphError(
            "need at least two articles and two terms with mentions edges"
        )
    rng = np.random.default_rng(hp.rng_seed)
    table = EmbeddingTable(hp.dim)
    for entity_id in graph.entity_ids():
        table.set(entity_id, rng.uniform(-hp.init_scale, hp.init_scale, hp.dim))
    for epoch in range(hp.epochs):
        triples = index.sample_many(rng, hp.triples_per_epoch)
        if on_epoch is not None:
            mean = sum(log_sigmoid(score(table, t)) for t in triples) / len(triples)
            on_epoch(epoch, mean)
        for triple in triples:
            sgd_step(table, triple, hp.learning_rate, hp.reg)
    return table


def evaluate(
    table: EmbeddingTable, held_out: list[TrainingTriple]
) -> tuple[float, float]:
    """(pairwise accuracy, mean ln sigma(score)) over held-out triples.

    A triple counts as correct only when its score is strictly positive.
    """
    if not held_out:
        raise EmptyHoldoutError("held-out triple list is empty")
    scores = [score(table, t) for t in held_out]
    accuracy = sum(1 for s in scores if s > 0) / len(scores)
    mean_ls = sum(log_sigmoid(s) for s in scores) / len(scores)
    return accuracy, mean_ls


class Recommendation(NamedTuple):
    entity_id: int
    score: float
    kind: str


def recommend(
    table: EmbeddingTable | None,
    graph: KnowledgeGraph,
    query: int,
    k: int,
) -> list[Recommendation]:
    """Rank entities within 2 undirected hops of the query.

    With a trained table, candidates score sigma(<theta_query, theta_c>),
    ties broken by article co-occurrence then ascending id.  Without one
    (table missing, or any needed row absent), ranking falls back to the
    co-occurrence count alone, with the count reported as the score.
    """
    if not graph.has_entity(query):
        raise UnknownEntityError(f"no entity with id {query}")
    if k < 1:
        raise ValueError("k must be >= 1")
    ball = graph.ego_subgraph(query, radius=2, max_nodes=len(graph.entity_ids()) + 1)
    candidates = [node.id for node in ball.nodes if node.id != query]
    if not candidates:
        return []
    index = MentionIndex(graph)
    co = {c: index.co_occurrence(query, c) for c in candidates}
    usable = (
        table is not None
        and query in table
        and all(c in table for c in candidates)
    )
    if usable:
        q_vec = table[query]
        ranked = sorted(
            candidates,
            key=lambda c: (-sigmoid(float(np.dot(q_vec, table[c]))), -co[c], c),
        )
        scored = [
            Recommendation(c, sigmoid(float(np.dot(q_vec, table[c]))), graph.entity(c).kind)
            for c in ranked
        ]
    else:
        ranked = sorted(candidates, key=lambda c: (-co[c], c))
        scored = [Recommendation(c, float(co[c]), graph.entity(c).kind) for c in ranked]
    return scored[:k]
