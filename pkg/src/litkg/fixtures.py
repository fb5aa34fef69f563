"""Demo fixture: a three-article corpus with its gazetteer and lexicon.

Small enough to reason about by hand, rich enough to exercise every layer:
multiword terms, article-term mentions, term-term relations, and a term
("alzheimer") shared by all three abstracts.
"""

from __future__ import annotations

import json
from pathlib import Path

from .extraction import Gazetteer, PosLexicon, ingest_article
from .graph import ArticleRecord, KnowledgeGraph

FIXTURE_CORPUS = [
    ArticleRecord(
        pmid="28474569",
        title="Involvement of ApoE4 in Alzheimer disease progression",
        abstract=(
            "ApoE4 is the factor for Alzheimer's disease. "
            "ApoE4 increases amyloid beta deposition in Alzheimer patients. "
            "Apo-E variants modulate lipid metabolism in the brain."
        ),
    ),
    ArticleRecord(
        pmid="33737172",
        title="Inhibition of lysosome function impairs amyloid beta clearance",
        abstract=(
            "Alzheimer's disease is a neurodegenerative disorder. "
            "Impaired amyloid beta turnover accelerates cognitive decline in Alzheimer patients. "
            "A group of lysosome enhancing compounds restores amyloid beta clearance."
        ),
    ),
    ArticleRecord(
        pmid="33115936",
        title="Cognitive effects of rTMS therapy in Alzheimer disease",
        abstract=(
            "rTMS improves cognitive decline in Alzheimer patients. "
            "Tau biomarkers predict rTMS outcomes. "
            "MCI precedes Alzheimer in the brain."
        ),
    ),
]

FIXTURE_GAZETTEER = {
    "alzheimer": "disease",
    "alzheimer's disease": "disease",
    "mci": "disease",
    "neurodegenerative disorder": "disease",
    "apoe4": "gene",
    "apo-e": "gene",
    "amyloid beta": "chemical",
    "tau biomarkers": "chemical",
    "group of lysosome enhancing compounds": "drug",
    "rtms": "other",
    "cognitive decline": "other",
    "brain": "other",
}

FIXTURE_LEXICON = {
    # verbs
    "is": "VERB",
    "are": "VERB",
    "was": "VERB",
    "has": "VERB",
    "have": "VERB",
    "causes": "VERB",
    "increases": "VERB",
    "decreases": "VERB",
    "reduces": "VERB",
    "improves": "VERB",
    "impairs": "VERB",
    "restores": "VERB",
    "modulate": "VERB",
    "modulates": "VERB",
    "accelerates": "VERB",
    "predict": "VERB",
    "predicts": "VERB",
    "precedes": "VERB",
    "inhibits": "VERB",
    "promotes": "VERB",
    "regulates": "VERB",
    "binds": "VERB",
    "shows": "VERB",
    # prepositions
    "of": "PREP",
    "in": "PREP",
    "for": "PREP",
    "with": "PREP",
    "to": "PREP",
    "by": "PREP",
    "from": "PREP",
    "on": "PREP",
    "between": "PREP",
    "within": "PREP",
    "during": "PREP",
    "via": "PREP",
    "against": "PREP",
    # determiners
    "a": "DET",
    "an": "DET",
    "the": "DET",
    "this": "DET",
    "these": "DET",
    "its": "DET",
    "their": "DET",
    "each": "DET",
    "all": "DET",
    # nouns
    "factor": "NOUN",
    "disease": "NOUN",
    "disorder": "NOUN",
    "patients": "NOUN",
    "therapy": "NOUN",
    "treatment": "NOUN",
    "deposition": "NOUN",
    "turnover": "NOUN",
    "clearance": "NOUN",
    "metabolism": "NOUN",
    "lipid": "NOUN",
    "variants": "NOUN",
    "outcomes": "NOUN",
    "progression": "NOUN",
    "function": "NOUN",
    "response": "NOUN",
    "levels": "NOUN",
    "risk": "NOUN",
    # adjectives
    "impaired": "ADJ",
    "cognitive": "ADJ",
    "faster": "ADJ",
    "progressive": "ADJ",
    "mild": "ADJ",
    "severe": "ADJ",
    "prevalent": "ADJ",
}


def fixture_gazetteer() -> Gazetteer:
    return Gazetteer(FIXTURE_GAZETTEER)


def fixture_lexicon() -> PosLexicon:
    return PosLexicon(FIXTURE_LEXICON)


def build_fixture_graph() -> KnowledgeGraph:
    """Ingest the fixture corpus into a fresh graph."""
    graph = KnowledgeGraph()
    gaz = fixture_gazetteer()
    lex = fixture_lexicon()
    for record in FIXTURE_CORPUS:
        ingest_article(graph, record, gaz, lex)
    return graph


def corpus_jsonl(records: list[ArticleRecord] | None = None) -> str:
    """Serialize a corpus in the ingest wire format (one object per line)."""
    records = FIXTURE_CORPUS if records is None else records
    return "".join(
        json.dumps(
            {"pmid": r.pmid, "title": r.title, "abstract": r.abstract},
            ensure_ascii=False,
        )
        + "\n"
        for r in records
    )


def write_fixture_files(directory: str | Path) -> dict[str, Path]:
    """Write corpus.jsonl, gazetteer.tsv and lexicon.tsv under `directory`."""
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    corpus_path = root / "corpus.jsonl"
    corpus_path.write_text(corpus_jsonl(), encoding="utf-8")
    gaz_path = root / "gazetteer.tsv"
    gaz_path.write_text(
        "".join(f"{term}\t{kind}\n" for term, kind in FIXTURE_GAZETTEER.items()),
        encoding="utf-8",
    )
    lex_path = root / "lexicon.tsv"
    lex_path.write_text(
        "".join(f"{token}\t{tag}\n" for token, tag in FIXTURE_LEXICON.items()),
        encoding="utf-8",
    )
    return {"corpus": corpus_path, "gazetteer": gaz_path, "lexicon": lex_path}
