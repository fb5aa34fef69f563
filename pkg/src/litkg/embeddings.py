"""Entity embedding table and the pairwise-ranking objective.

One dense vector per entity (articles and terminologies share the table and
the dimension).  An (article, term) pair is represented by the sum of its
two rows; training pushes the pair to score above a corrupted pair built
from an irrelevant term.  All math is plain numpy in float64.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CorruptStoreError, DimMismatchError, UnknownEntityError


class TrainingTriple(NamedTuple):
    """One preference sample: `article` relates to `term` over `neg_term`.

    `pos_article` shares `term` with `article`; `neg_article` contains
    `neg_term`.
    """

    article: int
    term: int
    neg_term: int
    pos_article: int
    neg_article: int


@dataclass
class Hyperparams:
    dim: int = 16
    learning_rate: float = 0.05
    reg: float = 0.01
    epochs: int = 200
    triples_per_epoch: int = 500
    rng_seed: int = 7
    init_scale: float = 0.05

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.reg < 0:
            raise ValueError("reg must be >= 0")
        if self.epochs < 1 or self.triples_per_epoch < 1:
            raise ValueError("epochs and triples_per_epoch must be positive")
        if self.init_scale <= 0:
            raise ValueError("init_scale must be > 0")

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "learning_rate": self.learning_rate,
            "reg": self.reg,
            "epochs": self.epochs,
            "triples_per_epoch": self.triples_per_epoch,
            "rng_seed": self.rng_seed,
            "init_scale": self.init_scale,
        }


class EmbeddingTable:
    """Dense float64 vector per entity id."""

    def __init__(self, dim: int) -> None:
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self._vectors: dict[int, np.ndarray] = {}

    def set(self, entity_id: int, vector: np.ndarray) -> None:
        vec = np.asarray(vector, dtype=np.float64)
        if vec.shape != (self.dim,):
            raise DimMismatchError(
                f"vector for entity {entity_id} has shape {vec.shape}, want ({self.dim},)"
            )
        if not np.all(np.isfinite(vec)):
            raise ValueError(f"vector for entity {entity_id} has non-finite components")
        self._vectors[entity_id] = vec

    def __getitem__(self, entity_id: int) -> np.ndarray:
        vec = self._vectors.get(entity_id)
        if vec is None:
            raise UnknownEntityError(f"no embedding row for entity {entity_id}")
        return vec

    def __contains__(self, entity_id: int) -> bool:
        return entity_id in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def ids(self) -> list[int]:
        return sorted(self._vectors)

    def squared_norm(self) -> float:
        return float(sum(np.dot(v, v) for v in self._vectors.values()))


def log_sigmoid(s: float) -> float:
    """ln sigma(s), computed without overflow on either tail."""
    if s >= 0:
        return -math.log1p(math.exp(-s))
    return s - math.log1p(math.exp(s))


def sigmoid(s: float) -> float:
    if s >= 0:
        return 1.0 / (1.0 + math.exp(-s))
    e = math.exp(s)
    return e / (1.0 + e)


def composite(table: EmbeddingTable, article: int, term: int) -> np.ndarray:
    """Combined representation of an article with a terminology (row sum)."""
    return table[article] + table[term]


def score(table: EmbeddingTable, triple: TrainingTriple) -> float:
    """Inner product of the anchor pair with the positive-minus-negative
    pair difference."""
    u = composite(table, triple.article, triple.term)
    v = composite(table, triple.pos_article, triple.term) - composite(
        table, triple.neg_article, triple.neg_term
    )
    return float(np.dot(u, v))


def objective(
    table: EmbeddingTable, triples: Iterable[TrainingTriple], reg: float
) -> float:
    """Sum of ln sigma(score) over triples minus reg * squared table norm."""
    total = sum(log_sigmoid(score(table, t)) for t in triples)
    return total - reg * table.squared_norm()


def _score_gradients(table: EmbeddingTable, triple: TrainingTriple) -> dict[int, np.ndarray]:
    """Per-row gradients of ln sigma(score) for one triple; contributions
    accumulate when roles share an entity."""
    u = composite(table, triple.article, triple.term)
    v = composite(table, triple.pos_article, triple.term) - composite(
        table, triple.neg_article, triple.neg_term
    )
    g = sigmoid(-float(np.dot(u, v)))
    grads: dict[int, np.ndarray] = {}

    def accumulate(entity_id: int, contribution: np.ndarray) -> None:
        if entity_id in grads:
            grads[entity_id] = grads[entity_id] + contribution
        else:
            grads[entity_id] = contribution

    accumulate(triple.article, g * v)
    accumulate(triple.term, g * (v + u))
    accumulate(triple.pos_article, g * u)
    accumulate(triple.neg_article, -g * u)
    accumulate(triple.neg_term, -g * u)
    return grads


def sgd_step(
    table: EmbeddingTable, triple: TrainingTriple, learning_rate: float, reg: float
) -> None:
    """One stochastic ascent step on the regularized log-likelihood, touching
    only the rows the triple references."""
    for entity_id, grad in _score_gradients(table, triple).items():
        row = table[entity_id]
        table._vectors[entity_id] = row + learning_rate * (grad - 2.0 * reg * row)


def objective_gradient(
    table: EmbeddingTable, triples: Iterable[TrainingTriple], reg: float
) -> dict[int, np.ndarray]:
    """Exact gradient of `objective` for every row in the table (the
    regularizer reaches rows no triple touches)."""
    grads = {eid: -2.0 * reg * table[eid] for eid in table.ids()}
    for triple in triples:
        for entity_id, grad in _score_gradients(table, triple).items():
            grads[entity_id] = grads[entity_id] + grad
    return grads


# -- persistence ----------------------------------------------------------------

EMBEDDING_SCHEMA_VERSION = 1


def save_embeddings(
    table: EmbeddingTable, path: str | Path, hyperparams: Hyperparams
) -> None:
    """Write the embedding store: a JSON header line, then one row record per
    line.  json float formatting round-trips binary64 exactly."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    header = {
        "schema_version": EMBEDDING_SCHEMA_VERSION,
        "dim": table.dim,
        "n_rows": len(table),
        "seed": hyperparams.rng_seed,
        "hyperparams": hyperparams.to_dict(),
    }
    with out.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for entity_id in table.ids():
            record = {"entity_id": entity_id, "vector": table[entity_id].tolist()}
            fh.write(json.dumps(record) + "\n")


def load_embeddings(path: str | Path) -> tuple[EmbeddingTable, Hyperparams]:
    """Read an embedding store written by save_embeddings."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise CorruptStoreError("embedding store is empty")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CorruptStoreError(f"embedding header is not JSON: {exc}") from exc
    if header.get("schema_version") != EMBEDDING_SCHEMA_VERSION:
        raise CorruptStoreError(
            f"unsupported embedding schema_version {header.get('schema_version')!r}"
        )
    try:
        hp = Hyperparams(**header["hyperparams"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptStoreError(f"embedding header hyperparams invalid: {exc}") from exc
    table = EmbeddingTable(header["dim"])
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            table.set(record["entity_id"], np.array(record["vector"], dtype=np.float64))
        except (json.JSONDecodeError, KeyError, TypeError, DimMismatchError) as exc:
            raise CorruptStoreError(f"embedding row at line {lineno} invalid: {exc}") from exc
    if len(table) != header.get("n_rows"):
        raise CorruptStoreError(
            f"embedding store has {len(table)} rows, header says {header.get('n_rows')}"
        )
    return table, hp
