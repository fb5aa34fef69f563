"""Synthetic article-terminology networks with planted structure.

Two topic clusters share nothing: an embedding model that learns the
cluster assignment can rank held-out within-cluster pairs above corrupted
cross-cluster ones, which gives a measurable learning signal with a known
ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import TrainingTriple
from .extraction import MENTIONS_RELATION
from .graph import ArticleRecord, KnowledgeGraph


@dataclass
class PlantedDataset:
    graph: KnowledgeGraph  # holds only the training split of mentions edges
    train_edges: list[tuple[int, int]]  # (article_id, term_id)
    holdout_edges: list[tuple[int, int]]
    article_terms: dict[int, set[int]]  # full assignment, both splits


def planted_two_cluster_graph(
    n_articles: int = 40,
    n_terms: int = 10,
    mentions_per_article: int = 3,
    holdout_fraction: float = 0.2,
    seed: int = 7,
) -> PlantedDataset:
    """Build a two-cluster network and split its mentions edges.

    Articles and terms are halved into two clusters; each article mentions
    `mentions_per_article` distinct terms drawn from its own cluster.  The
    holdout takes one edge from enough articles to reach the requested
    fraction, so every article keeps at least two training edges.
    """
    if n_terms % 2 or n_articles % 2:
        raise ValueError("n_articles and n_terms must be even")
    if mentions_per_article < 2 or mentions_per_article > n_terms // 2:
        raise ValueError("mentions_per_article must be in [2, n_terms/2]")
    rng = np.random.default_rng(seed)
    graph = KnowledgeGraph()
    term_ids: list[int] = []
    for i in range(n_terms):
        cluster = "a" if i < n_terms // 2 else "b"
        term_ids.append(graph.upsert_term(f"topic-{cluster}-{i}", "other"))
    article_ids: list[int] = []
    for i in range(n_articles):
        pmid = str(90000000 + i)
        article_ids.append(
            graph.upsert_article(ArticleRecord(pmid=pmid, title=f"study {i}", abstract=""))
        )

    article_terms: dict[int, set[int]] = {}
    all_edges: list[tuple[int, int]] = []
    half_terms = n_terms // 2
    half_articles = n_articles // 2
    for idx, article in enumerate(article_ids):
        cluster_terms = (
            term_ids[:half_terms] if idx < half_articles else term_ids[half_terms:]
        )
        chosen = rng.choice(len(cluster_terms), size=mentions_per_article, replace=False)
        terms = {cluster_terms[int(c)] for c in chosen}
        article_terms[article] = terms
        for term in sorted(terms):
            all_edges.append((article, term))

    n_holdout = round(holdout_fraction * len(all_edges))
    if n_holdout > n_articles:
        raise ValueError("holdout_fraction too large for one edge per article")
    donor_idx = rng.choice(n_articles, size=n_holdout, replace=False)
    holdout_edges: list[tuple[int, int]] = []
    holdout_set: set[tuple[int, int]] = set()
    for di in sorted(int(d) for d in donor_idx):
        article = article_ids[di]
        terms = sorted(article_terms[article])
        term = terms[int(rng.integers(len(terms)))]
        holdout_edges.append((article, term))
        holdout_set.add((article, term))

    train_edges = [e for e in all_edges if e not in holdout_set]
    for article, term in train_edges:
        graph.add_triplet(article, MENTIONS_RELATION, term, (graph.entity(article).canonical_name, 0))
    return PlantedDataset(
        graph=graph,
        train_edges=train_edges,
        holdout_edges=holdout_edges,
        article_terms=article_terms,
    )


def holdout_triples(
    dataset: PlantedDataset, per_edge: int = 20, seed: int = 99
) -> list[TrainingTriple]:
    """Build evaluation triples from the held-out edges.

    Negative terms are drawn from terms the anchor article never mentions
    (in the full assignment, so held-out positives are never mislabeled);
    positive and negative articles come from the training split.
    """
    rng = np.random.default_rng(seed)
    train_term_articles: dict[int, list[int]] = {}
    for article, term in dataset.train_edges:
        train_term_articles.setdefault(term, []).append(article)
    for articles in train_term_articles.values():
        articles.sort()
    all_terms = sorted({t for _, t in dataset.train_edges} | {t for _, t in dataset.holdout_edges})

    triples: list[TrainingTriple] = []
    for article, term in dataset.holdout_edges:
        linked = dataset.article_terms[article]
        neg_candidates = [t for t in all_terms if t not in linked]
        pos_candidates = [a for a in train_term_articles.get(term, []) if a != article]
        if not neg_candidates or not pos_candidates:
            continue
        for _ in range(per_edge):
            neg_term = neg_candidates[int(rng.integers(len(neg_candidates)))]
            neg_articles = train_term_articles.get(neg_term, [])
            if not neg_articles:
                continue
            triples.append(
                TrainingTriple(
                    article=article,
                    term=term,
                    neg_term=neg_term,
                    pos_article=pos_candidates[int(rng.integers(len(pos_candidates)))],
                    neg_article=neg_articles[int(rng.integers(len(neg_articles)))],
                )
            )
    return triples
