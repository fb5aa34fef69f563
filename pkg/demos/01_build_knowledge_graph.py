#!/usr/bin/env python3
"""Build a knowledge graph from a small abstract corpus and look around.

Every abstract becomes an article node; gazetteer terms become term nodes;
verb/preposition phrases between neighboring terms become labeled edges,
and each article points at every term it mentions.
"""

from litkg import KnowledgeGraph
from litkg.fixtures import FIXTURE_CORPUS, build_fixture_graph

graph = build_fixture_graph()

n_terms, n_articles, n_triplets = graph.stats()
print(f"graph: {n_terms} terms, {n_articles} articles, {n_triplets} triplets\n")

# Each edge remembers which sentence of which abstract produced it.
print("every triplet with provenance:")
for t in graph.triplets():
    head = graph.entity(t.head).canonical_name
    tail = graph.entity(t.tail).canonical_name
    where = ", ".join(f"pmid {p} s{s}" for p, s in t.provenance)
    print(f"  {head} -[{t.relation}]-> {tail}   [{where}]")

# Name search is tiered: exact beats prefix beats substring.
print("\nsearch 'alzheimer':")
for eid, tier in graph.find_entities("alzheimer", limit=5):
    print(f"  tier {tier}: {graph.entity(eid).canonical_name}")

# The store is a plain directory of JSONL files; round trips are lossless.
import tempfile
from pathlib import Path

with tempfile.TemporaryDirectory() as tmp:
    store = Path(tmp) / "store"
    graph.save(store)
    reloaded = KnowledgeGraph.load(store)
    print(f"\nsave/load round trip lossless: {reloaded == graph}")
    print(f"store files: {sorted(p.name for p in store.iterdir())}")
