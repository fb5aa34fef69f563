"""Shared test helpers: random graph builders and brute-force oracles."""

from __future__ import annotations

import random

from litkg.graph import ArticleRecord, KnowledgeGraph


def random_graph(
    rng: random.Random, max_nodes: int = 100, edge_prob: float = 0.05
) -> KnowledgeGraph:
    """A random mixed graph: terms and articles, random labeled edges."""
    g = KnowledgeGraph()
    n = rng.randint(2, max_nodes)
    ids = []
    for i in range(n):
        if rng.random() < 0.3:
            ids.append(
                g.upsert_article(
                    ArticleRecord(pmid=str(10_000_000 + i), title=f"t{i}", abstract="")
                )
            )
        else:
            ids.append(g.upsert_term(f"term {i}", "other"))
    relations = ["relates to", "inhibits", "mentions", "binds"]
    for h in ids:
        for t in ids:
            if h != t and rng.random() < edge_prob:
                g.add_triplet(h, rng.choice(relations), t, (str(rng.randint(1, 9)), 0))
    return g


def bfs_ball(g: KnowledgeGraph, center: int, radius: int) -> set[int]:
    """Brute-force undirected BFS ball, independent of the graph's indexes."""
    adjacency: dict[int, set[int]] = {}
    for t in g.triplets():
        adjacency.setdefault(t.head, set()).add(t.tail)
        adjacency.setdefault(t.tail, set()).add(t.head)
    seen = {center}
    frontier = {center}
    for _ in range(radius):
        frontier = {
            n for f in frontier for n in adjacency.get(f, ()) if n not in seen
        }
        seen |= frontier
    return seen


def edge_content(g: KnowledgeGraph) -> set[tuple]:
    """Order-insensitive edge fingerprint (provenance as a sorted multiset)."""
    return {
        (t.head, t.relation, t.tail, tuple(sorted(t.provenance)))
        for t in g.triplets()
    }
