#!/usr/bin/env python3
"""Walk one abstract through each extraction stage.

The pipeline is deterministic end to end: sentence splitting, tokenization,
gazetteer matching (greedy longest match), POS-lexicon tagging, and
verb/preposition relation extraction between consecutive mentions.
"""

from litkg import extract_relation, find_mentions, split_sentences, tokenize
from litkg.fixtures import fixture_gazetteer, fixture_lexicon

abstract = (
    "ApoE4 is the factor for Alzheimer's disease. "
    "ApoE4 increases amyloid beta deposition in Alzheimer patients."
)
gazetteer = fixture_gazetteer()
lexicon = fixture_lexicon()

print(f"abstract: {abstract}\n")

sentences = split_sentences(abstract)
print(f"1. sentence split -> {len(sentences)} sentences")
for i, s in enumerate(sentences):
    print(f"   [{i}] {s}")

for s_idx, sentence in enumerate(sentences):
    tokens, display = tokenize(sentence)
    print(f"\n2. tokens of sentence {s_idx}: {tokens}")

    mentions = find_mentions(tokens, gazetteer, s_idx)
    print("3. gazetteer mentions:")
    for m in mentions:
        print(f"   {m.term!r} at tokens [{m.start}, {m.end})")

    print("4. relations between consecutive mentions:")
    for left, right in zip(mentions, mentions[1:]):
        gap = tokens[left.end : right.start]
        tags = [f"{tok}/{lexicon.tag(tok)}" for tok in gap]
        relation = extract_relation(tokens, left, right, lexicon)
        print(f"   gap {tags}")
        print(f"   -> ({left.term}, {relation!r}, {right.term})")
