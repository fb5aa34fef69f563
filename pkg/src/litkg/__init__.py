"""Knowledge-graph literature explorer.

Builds a triplet knowledge graph from article abstracts, retrieves focused
ego subgraphs per query, and recommends refined queries from trained entity
embeddings.  Served over HTTP and a CLI; see README for the tour.
"""

from .embeddings import (
    EmbeddingTable,
    Hyperparams,
    TrainingTriple,
    composite,
    load_embeddings,
    objective,
    objective_gradient,
    save_embeddings,
    score,
    sgd_step,
)
from .errors import (
    BadPmidError,
    CorruptStoreError,
    DimMismatchError,
    EmptyHoldoutError,
    EmptyNameError,
    EmptyRelationError,
    InsufficientGraphError,
    LitkgError,
    SelfLoopError,
    UnknownEntityError,
)
from .extraction import (
    Gazetteer,
    Mention,
    PosLexicon,
    TripletSpec,
    extract_relation,
    extract_triplets,
    find_mentions,
    ingest_article,
    split_sentences,
    tokenize,
)
from .graph import (
    ArticleRecord,
    Entity,
    KnowledgeGraph,
    Subgraph,
    Triplet,
    normalize_name,
)
from .recommender import (
    MentionIndex,
    Recommendation,
    evaluate,
    recommend,
    sample_triples,
    train,
    validate_triple,
)

__version__ = "0.1.0"

__all__ = [
    "ArticleRecord",
    "BadPmidError",
    "CorruptStoreError",
    "DimMismatchError",
    "EmbeddingTable",
    "EmptyHoldoutError",
    "EmptyNameError",
    "EmptyRelationError",
    "Entity",
    "Gazetteer",
    "Hyperparams",
    "InsufficientGraphError",
    "KnowledgeGraph",
    "LitkgError",
    "Mention",
    "MentionIndex",
    "PosLexicon",
    "Recommendation",
    "SelfLoopError",
    "Subgraph",
    "TrainingTriple",
    "Triplet",
    "TripletSpec",
    "UnknownEntityError",
    "composite",
    "evaluate",
    "extract_relation",
    "extract_triplets",
    "find_mentions",
    "ingest_article",
    "load_embeddings",
    "normalize_name",
    "objective",
    "objective_gradient",
    "recommend",
    "sample_triples",
    "save_embeddings",
    "score",
    "sgd_step",
    "split_sentences",
    "tokenize",
    "train",
    "validate_triple",
]
