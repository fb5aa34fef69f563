#!/usr/bin/env python3
"""Focused retrieval: the ego subgraph around a queried entity.

Instead of showing the whole graph, a query returns only the ball of
entities within a hop radius.  When the ball is larger than the node
budget, whole BFS layers are kept first, and within a layer high-degree
(most informative) nodes win.
"""

from litkg.fixtures import build_fixture_graph

graph = build_fixture_graph()
center = graph.term_id("alzheimer")

for radius in (1, 2):
    sub = graph.ego_subgraph(center, radius=radius, max_nodes=50)
    articles = [n for n in sub.nodes if n.kind == "article"]
    terms = [n for n in sub.nodes if n.kind == "term"]
    print(f"radius {radius}: {len(terms)} terms, {len(articles)} articles, "
          f"{len(sub.edges)} edges, truncated={sub.truncated}")
    for n in sub.nodes:
        marker = "*" if n.id == sub.center else " "
        print(f"  {marker} {n.kind:<7} {n.canonical_name}")
    print()

# A tight budget keeps the center plus the best-connected neighbors.
small = graph.ego_subgraph(center, radius=2, max_nodes=5)
print("radius 2 with max_nodes=5 (layer order, degree-descending within layers):")
for n in small.nodes:
    print(f"    {n.canonical_name} (degree {graph.degree(n.id)})")
print(f"truncated: {small.truncated}")
