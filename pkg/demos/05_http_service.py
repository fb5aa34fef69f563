#!/usr/bin/env python3
"""Drive the HTTP service end to end: ingest, search, subgraph, recommend.

Starts an in-process server on a free port, posts the fixture corpus, and
walks the same request sequence the web UI makes.
"""

import json
import socket
import threading
import time

import httpx
import uvicorn

from litkg.fixtures import corpus_jsonl, fixture_gazetteer, fixture_lexicon
from litkg.graph import KnowledgeGraph
from litkg.service import ServiceState, create_app

with socket.socket() as probe:
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]

state = ServiceState(
    KnowledgeGraph(), gazetteer=fixture_gazetteer(), lexicon=fixture_lexicon()
)
server = uvicorn.Server(
    uvicorn.Config(create_app(state), host="127.0.0.1", port=port, log_level="warning")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()

base = f"http://127.0.0.1:{port}"
while True:
    try:
        httpx.get(f"{base}/api/health", timeout=1)
        break
    except httpx.HTTPError:
        time.sleep(0.05)

def show(label, payload):
    print(f"\n=== {label} ===")
    print(json.dumps(payload, indent=2)[:1200])

show("health before ingest", httpx.get(f"{base}/api/health").json())
show("ingest fixture corpus",
     httpx.post(f"{base}/api/ingest", content=corpus_jsonl()).json())
show("search ?q=alzheimer",
     httpx.get(f"{base}/api/search", params={"q": "alzheimer"}).json())

subgraph = httpx.get(f"{base}/api/subgraph", params={"q": "alzheimer"}).json()
print(f"\n=== subgraph ?q=alzheimer ===")
print(f"center id {subgraph['center']}, {len(subgraph['nodes'])} nodes, "
      f"{len(subgraph['edges'])} edges, truncated={subgraph['truncated']}")
for node in subgraph["nodes"]:
    print(f"  [{node['kind']}] {node['name']}")

show("article detail 28474569", httpx.get(f"{base}/api/article/28474569").json())
show("recommend ?q=alzheimer&k=5",
     httpx.get(f"{base}/api/recommend", params={"q": "alzheimer", "k": 5}).json())

server.should_exit = True
thread.join(timeout=5)
print("\nserver stopped")
