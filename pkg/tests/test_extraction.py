"""Abstract-to-triplet pipeline: splitting, matching, relations, ingestion."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from litkg.extraction import (
    Gazetteer,
    Mention,
    PosLexicon,
    extract_relation,
    extract_triplets,
    find_mentions,
    ingest_article,
    split_sentences,
    tokenize,
)
from litkg.fixtures import (
    FIXTURE_CORPUS,
    build_fixture_graph,
    fixture_gazetteer,
    fixture_lexicon,
    write_fixture_files,
)
from litkg.graph import ArticleRecord, KnowledgeGraph

from helpers import edge_content


class TestSplitSentences:
    def test_empty(self):
        assert split_sentences("") == []

    def test_two_terminal_sentences(self):
        assert split_sentences("A is B. C is D.") == ["A is B", "C is D"]

    def test_lowercase_guard(self):
        text = "Aβ clearance (e.g. plaques) fails. It matters."
        assert split_sentences(text) == [
            "Aβ clearance (e.g. plaques) fails",
            "It matters",
        ]

    def test_question_and_exclamation(self):
        assert split_sentences("Does it work? It does! Yes.") == [
            "Does it work",
            "It does",
            "Yes",
        ]

    def test_no_terminal_punctuation(self):
        assert split_sentences("no punctuation here") == ["no punctuation here"]

    def test_lowercase_after_period_keeps_sentence(self):
        assert split_sentences("measured at 37 deg. in vitro.") == [
            "measured at 37 deg. in vitro"
        ]


class TestTokenize:
    def test_sample_sentence(self):
        tokens, display = tokenize("ApoE4 is the factor for Alzheimer's disease.")
        assert tokens == ["apoe4", "is", "the", "factor", "for", "alzheimer's", "disease"]
        assert display == ["ApoE4", "is", "the", "factor", "for", "Alzheimer's", "disease"]

    def test_empty(self):
        assert tokenize("") == ([], [])

    def test_hyphen_retained(self):
        tokens, _ = tokenize("rTMS-based therapy")
        assert tokens == ["rtms-based", "therapy"]

    def test_punctuation_stripped(self):
        tokens, _ = tokenize("(plaques), [tau]; 'quoted'")
        assert tokens == ["plaques", "tau", "quoted"]

    def test_internal_period_survives(self):
        tokens, _ = tokenize("(e.g. plaques)")
        assert tokens == ["e.g", "plaques"]

    @given(st.text(max_size=80))
    @settings(max_examples=100, deadline=None)
    def test_tokens_have_alnum_boundaries(self, text):
        tokens, display = tokenize(text)
        assert len(tokens) == len(display)
        for tok, disp in zip(tokens, display):
            assert tok and disp
            assert tok == disp.lower()
            assert tok[0].isalnum() and tok[-1].isalnum()


class TestFindMentions:
    def test_multiword_match(self):
        gaz = Gazetteer({"apoe4": "gene", "alzheimer's disease": "disease"})
        tokens = ["apoe4", "is", "the", "factor", "for", "alzheimer's", "disease"]
        mentions = find_mentions(tokens, gaz)
        assert [(m.term, m.start, m.end) for m in mentions] == [
            ("apoe4", 0, 1),
            ("alzheimer's disease", 5, 7),
        ]

    def test_longest_match_wins(self):
        gaz = Gazetteer({"alzheimer's": "disease", "alzheimer's disease": "disease"})
        mentions = find_mentions(["alzheimer's", "disease"], gaz)
        assert [m.term for m in mentions] == ["alzheimer's disease"]

    def test_no_hits(self):
        gaz = Gazetteer({"tau": "chemical"})
        assert find_mentions(["no", "match"], gaz) == []

    def test_consumed_spans_do_not_overlap(self):
        gaz = Gazetteer({"a b": "other", "b c": "other"})
        mentions = find_mentions(["a", "b", "c"], gaz)
        assert [(m.start, m.end) for m in mentions] == [(0, 2)]

    @given(st.lists(st.sampled_from(["a", "b", "c", "d"]), max_size=20))
    @settings(max_examples=100, deadline=None)
    def test_mentions_sorted_and_disjoint(self, tokens):
        gaz = Gazetteer({"a": "other", "b c": "other", "c d a": "other"})
        mentions = find_mentions(tokens, gaz)
        for left, right in zip(mentions, mentions[1:]):
            assert left.end <= right.start
        for m in mentions:
            assert 0 <= m.start < m.end <= len(tokens)
            assert " ".join(tokens[m.start : m.end]) == m.term


class TestExtractRelation:
    def lexicon(self):
        return PosLexicon({"is": "VERB", "for": "PREP", "the": "DET", "factor": "NOUN", "a": "DET"})

    def mention(self, start, end, term="x"):
        return Mention(term=term, start=start, end=end, sentence=0)

    def test_verb_preposition_join(self):
        tokens = ["apoe4", "is", "the", "factor", "for", "alzheimer's", "disease"]
        rel = extract_relation(tokens, self.mention(0, 1), self.mention(5, 7), self.lexicon())
        assert rel == "is for"

    def test_no_verb_or_preposition(self):
        tokens = ["x", "a", "y"]
        assert extract_relation(tokens, self.mention(0, 1), self.mention(2, 3), self.lexicon()) is None

    def test_gap_cutoff(self):
        tokens = ["x"] + ["is"] * 11 + ["y"]
        first = self.mention(0, 1)
        second = self.mention(12, 13)
        assert extract_relation(tokens, first, second, self.lexicon()) is None
        # exactly at the limit still extracts
        tokens = ["x"] + ["is"] * 10 + ["y"]
        assert extract_relation(tokens, first, self.mention(11, 12), self.lexicon()) == "is " * 9 + "is"


class TestExtractTriplets:
    def test_full_pipeline_example(self):
        article = ArticleRecord("1", "t", "ApoE4 is the factor for Alzheimer's disease.")
        specs = extract_triplets(article, fixture_gazetteer(), fixture_lexicon())
        relational = [(s.head, s.relation, s.tail) for s in specs if not s.head_is_article]
        mentions = [(s.head, s.relation, s.tail) for s in specs if s.head_is_article]
        assert relational == [("apoe4", "is for", "alzheimer's disease")]
        assert mentions == [
            ("1", "mentions", "apoe4"),
            ("1", "mentions", "alzheimer's disease"),
        ]

    def test_case_study_sentence(self):
        article = ArticleRecord("2", "t", "Alzheimer's disease is a neurodegenerative disorder.")
        specs = extract_triplets(article, fixture_gazetteer(), fixture_lexicon())
        relational = [(s.head, s.relation, s.tail) for s in specs if not s.head_is_article]
        assert relational == [("alzheimer's disease", "is", "neurodegenerative disorder")]

    def test_empty_abstract(self):
        article = ArticleRecord("3", "t", "")
        assert extract_triplets(article, fixture_gazetteer(), fixture_lexicon()) == []

    def test_purity(self):
        article = FIXTURE_CORPUS[0]
        first = extract_triplets(article, fixture_gazetteer(), fixture_lexicon())
        second = extract_triplets(article, fixture_gazetteer(), fixture_lexicon())
        assert first == second

    def test_relation_tokens_retag_to_verb_or_prep(self):
        lexicon = fixture_lexicon()
        for article in FIXTURE_CORPUS:
            for spec in extract_triplets(article, fixture_gazetteer(), lexicon):
                if spec.head_is_article:
                    continue
                for token in spec.relation.split(" "):
                    assert lexicon.tag(token) in ("VERB", "PREP")

    def test_gazetteer_growth_is_monotone(self):
        article = FIXTURE_CORPUS[0]
        base = extract_triplets(article, fixture_gazetteer(), fixture_lexicon())
        # "patients" sits after the last mention of its sentence, so no
        # existing consecutive-mention pair is disturbed
        grown = fixture_gazetteer()
        grown.add("patients", "other")
        after = extract_triplets(article, grown, fixture_lexicon())
        base_pairs = {(s.head, s.relation, s.tail) for s in base if not s.head_is_article}
        after_pairs = {(s.head, s.relation, s.tail) for s in after if not s.head_is_article}
        assert base_pairs <= after_pairs
        assert len(after) >= len(base)

    def test_triplet_count_monotone_even_when_pairing_shifts(self):
        # an entry between two old mentions re-pairs them, but never shrinks
        # the total triplet count
        article = FIXTURE_CORPUS[0]
        base = extract_triplets(article, fixture_gazetteer(), fixture_lexicon())
        grown = fixture_gazetteer()
        grown.add("lipid metabolism", "other")
        after = extract_triplets(article, grown, fixture_lexicon())
        assert len(after) >= len(base)


class TestIngest:
    def test_fixture_counts(self):
        g = build_fixture_graph()
        assert g.stats() == (12, 3, 30)

    def test_reingest_is_idempotent(self):
        g = build_fixture_graph()
        before = (g.stats(), edge_content(g), g.entities())
        gaz, lex = fixture_gazetteer(), fixture_lexicon()
        for record in FIXTURE_CORPUS:
            ingest_article(g, record, gaz, lex)
        assert (g.stats(), edge_content(g), g.entities()) == before

    def test_no_hits_still_creates_article(self):
        g = KnowledgeGraph()
        counts = ingest_article(
            g,
            ArticleRecord("5", "t", "Nothing matches here."),
            fixture_gazetteer(),
            fixture_lexicon(),
        )
        assert counts == (0, 0)
        assert g.stats() == (0, 1, 0)

    def test_every_term_reachable_from_an_article(self):
        g = build_fixture_graph()
        mentioned = {
            t.tail
            for t in g.triplets()
            if t.relation == "mentions" and g.entity(t.head).kind == "article"
        }
        terms = {e.id for e in g.entities() if e.kind == "term"}
        assert terms == mentioned

    def test_mention_counts(self):
        g = KnowledgeGraph()
        counts = ingest_article(
            g, FIXTURE_CORPUS[0], fixture_gazetteer(), fixture_lexicon()
        )
        # 3 sentences with 2 + 3 + 2 mentions; 4 relations + 6 mentions edges
        assert counts == (7, 10)


class TestTsvLoading:
    def test_roundtrip_through_files(self, tmp_path):
        paths = write_fixture_files(tmp_path)
        gaz = Gazetteer.from_tsv(paths["gazetteer"])
        lex = PosLexicon.from_tsv(paths["lexicon"])
        assert gaz.entries == fixture_gazetteer().entries
        assert lex.entries == fixture_lexicon().entries

    def test_malformed_line_reports_position(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("tau\tchemical\nno-tab-here\n", encoding="utf-8")
        with pytest.raises(ValueError, match="2"):
            Gazetteer.from_tsv(bad)

    def test_unknown_tag_rejected(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("word\tVERBY\n", encoding="utf-8")
        with pytest.raises(ValueError):
            PosLexicon.from_tsv(bad)
