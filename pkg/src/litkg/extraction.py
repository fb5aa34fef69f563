"""Deterministic abstract-to-triplet pipeline.

Entity recognition is gazetteer-driven (greedy longest match over token
n-grams) and relation labels are the verb/preposition tokens found between
consecutive mentions, tagged by a plain lexicon.  Both stand in for
model-backed taggers behind the same interface, so everything here is a pure
function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyNameError
from .graph import ArticleRecord, KnowledgeGraph, TERM_TYPES, normalize_name

VERB = "VERB"
PREP = "PREP"
DET = "DET"
NOUN = "NOUN"
ADJ = "ADJ"
OTHER = "OTHER"

POS_TAGS = (VERB, PREP, DET, NOUN, ADJ, OTHER)

MENTIONS_RELATION = "mentions"

DEFAULT_MAX_GAP = 10

_TERMINATORS = ".?!"


class Gazetteer:
    """Dictionary of known terms, keyed by normalized (possibly multiword)
    canonical form, mapping to a term type."""

    def __init__(self, entries: dict[str, str] | None = None) -> None:
        self.entries: dict[str, str] = {}
        for term, term_type in (entries or {}).items():
            self.add(term, term_type)

    def add(self, term: str, term_type: str) -> None:
        key = normalize_name(term)
        if not key:
            raise EmptyNameError(f"gazetteer term empty after normalization: {term!r}")
        if term_type not in TERM_TYPES:
            raise ValueError(f"unknown term type {term_type!r} for {term!r}")
        self.entries[key] = term_type

    def max_key_tokens(self) -> int:
        return max((key.count(" ") + 1 for key in self.entries), default=0)

    @classmethod
    def from_tsv(cls, path: str | Path) -> "Gazetteer":
        gaz = cls()
        for lineno, (left, right) in _read_tsv(path):
            try:
                gaz.add(left, right)
            except (EmptyNameError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
        return gaz


class PosLexicon:
    """Token to POS-tag lookup; unknown tokens default to OTHER."""

    def __init__(self, entries: dict[str, str] | None = None) -> None:
        self.entries: dict[str, str] = {}
        for token, tag in (entries or {}).items():
            self.add(token, tag)

    def add(self, token: str, tag: str) -> None:
        key = normalize_name(token)
        if not key:
            raise ValueError(f"lexicon token empty after normalization: {token!r}")
        if tag not in POS_TAGS:
            raise ValueError(f"unknown POS tag {tag!r} for {token!r}")
        self.entries[key] = tag

    def tag(self, token: str) -> str:
        return self.entries.get(token.lower(), OTHER)

    @classmethod
    def from_tsv(cls, path: str | Path) -> "PosLexicon":
        lex = cls()
        for lineno, (left, right) in _read_tsv(path):
            try:
                lex.add(left, right)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
        return lex


def _read_tsv(path: str | Path) -> list[tuple[int, tuple[str, str]]]:
    rows = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected two tab-separated fields")
        rows.append((lineno, (parts[0], parts[1])))
    return rows


@dataclass(frozen=True)
class Mention:
    """One gazetteer hit: canonical term over token span [start, end)."""

    term: str
    start: int
    end: int
    sentence: int


@dataclass(frozen=True)
class TripletSpec:
    """An edge to materialize: head/tail as canonical names (head is a pmid
    when head_is_article)."""

    head: str
    relation: str
    tail: str
    head_is_article: bool
    pmid: str
    sentence: int


def split_sentences(abstract: str) -> list[str]:
    """Split at '.', '?' or '!' followed by whitespace + an uppercase letter,
    or at end of text.  The triggering delimiter is stripped; empty segments
    are dropped."""
    sentences: list[str] = []
    buf: list[str] = []
    i = 0
    n = len(abstract)
    while i < n:
        ch = abstract[i]
        if ch in _TERMINATORS:
            j = i + 1
            while j < n and abstract[j].isspace():
                j += 1
            at_end = j >= n
            if at_end or (j > i + 1 and abstract[j].isalpha() and abstract[j].isupper()):
                text = "".join(buf).strip()
                if text:
                    sentences.append(text)
                buf = []
                i = j
                continue
        buf.append(ch)
        i += 1
    tail = "".join(buf).strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize(sentence: str) -> tuple[list[str], list[str]]:
    """Whitespace-split, then strip leading/trailing punctuation from each
    chunk (internal hyphens/apostrophes survive).  Returns (match_tokens,
    display_tokens): lowercase for matching, original casing for display."""
    match_tokens: list[str] = []
    display_tokens: list[str] = []
    for chunk in sentence.split():
        start = 0
        end = len(chunk)
        while start < end and not chunk[start].isalnum():
            start += 1
        while end > start and not chunk[end - 1].isalnum():
            end -= 1
        core = chunk[start:end]
        if core:
            display_tokens.append(core)
            match_tokens.append(core.lower())
    return match_tokens, display_tokens


def find_mentions(
    tokens: list[str], gazetteer: Gazetteer, sentence_index: int = 0
) -> list[Mention]:
    """Greedy left-to-right longest match of gazetteer keys against token
    n-grams; matched spans are consumed, so mentions never overlap."""
    longest = gazetteer.max_key_tokens()
    mentions: list[Mention] = []
    i = 0
    while i < len(tokens):
        matched = False
        for n in range(min(longest, len(tokens) - i), 0, -1):
            key = " ".join(tokens[i : i + n])
            if key in gazetteer.entries:
                mentions.append(Mention(key, i, i + n, sentence_index))
                i += n
                matched = True
                break
        if not matched:
            i += 1
    return mentions


def extract_relation(
    tokens: list[str],
    first: Mention,
    second: Mention,
    lexicon: PosLexicon,
    max_gap: int = DEFAULT_MAX_GAP,
) -> str | None:
    """Verb/preposition tokens between two mentions, joined by spaces.

    Returns None when the gap exceeds max_gap or holds no verb/preposition.
    """
    if second.start - first.end > max_gap:
        return None
    picked = [
        tok
        for tok in tokens[first.end : second.start]
        if lexicon.tag(tok) in (VERB, PREP)
    ]
    if not picked:
        return None
    return " ".join(picked)


def extract_triplets(
    article: ArticleRecord,
    gazetteer: Gazetteer,
    lexicon: PosLexicon,
    max_gap: int = DEFAULT_MAX_GAP,
) -> list[TripletSpec]:
    """Run the full pipeline over one abstract.

    Per sentence, consecutive mention pairs with a verb/preposition relation
    become term-term edges; every distinct mentioned term additionally gets
    an article-"mentions"-term edge (provenance = first occurrence).
    """
    specs: list[TripletSpec] = []
    seen_terms: dict[str, int] = {}
    for s_idx, sentence in enumerate(split_sentences(article.abstract)):
        tokens, _ = tokenize(sentence)
        mentions = find_mentions(tokens, gazetteer, s_idx)
        for m in mentions:
            seen_terms.setdefault(m.term, s_idx)
        for left, right in zip(mentions, mentions[1:]):
            relation = extract_relation(tokens, left, right, lexicon, max_gap)
            if relation is not None and left.term != right.term:
                specs.append(
                    TripletSpec(
                        head=left.term,
                        relation=relation,
                        tail=right.term,
                        head_is_article=False,
                        pmid=article.pmid,
                        sentence=s_idx,
                    )
                )
    for term, first_sentence in seen_terms.items():
        specs.append(
            TripletSpec(
                head=article.pmid,
                relation=MENTIONS_RELATION,
                tail=term,
                head_is_article=True,
                pmid=article.pmid,
                sentence=first_sentence,
            )
        )
    return specs


def ingest_article(
    graph: KnowledgeGraph,
    article: ArticleRecord,
    gazetteer: Gazetteer,
    lexicon: PosLexicon,
    max_gap: int = DEFAULT_MAX_GAP,
) -> tuple[int, int]:
    """Upsert the article node and materialize all extracted edges.

    Returns (n_mentions, n_triplets): total mention occurrences in the
    abstract and the number of edge specs materialized.
    """
    article_id = graph.upsert_article(article)
    n_mentions = 0
    for s_idx, sentence in enumerate(split_sentences(article.abstract)):
        tokens, _ = tokenize(sentence)
        n_mentions += len(find_mentions(tokens, gazetteer, s_idx))
    specs = extract_triplets(article, gazetteer, lexicon, max_gap)
    for spec in specs:
        if spec.head_is_article:
            head = article_id
        else:
            head = graph.upsert_term(spec.head, gazetteer.entries[spec.head])
        tail = graph.upsert_term(spec.tail, gazetteer.entries[spec.tail])
        graph.add_triplet(head, spec.relation, tail, (spec.pmid, spec.sentence))
    return n_mentions, len(specs)
