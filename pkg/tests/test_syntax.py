from __future__ import annotations

import re

import pytest

from biradscheck.corpus import Sentence, tokenize
from biradscheck.resources import data_dir
from biradscheck.syntax import (
    ChunkPattern,
    RuleTagger,
    chunk,
    extract_syntax,
    load_tag_lexicon,
    pos_tag,
    sentence_words,
)

FIG_SENTENCE = (
    "again seen is a focal asymmetry in the medial aspect of the right breast "
    "which probably corresponds with a focal asymmetry noted in the lower "
    "aspect of the right breast"
)

# the published bracketing, with the two recorded label oddities normalized
# to what the tag->label grammar produces: the source figure labels
# "is/VBZ" as NP and "corresponds/NNS" as VP, which no consistent grammar
# can emit; segmentation, tags and pattern positions are reproduced exactly.
FIG_BRACKETING = (
    "[ADVP again/RB] [VP seen/VBN] [VP is/VBZ] [NP a/DT focal/JJ asymmetry/NN] "
    "[PP in/IN] [NP the/DT medial/JJ aspect/NN] [PP of/IN] "
    "[NP the/DT right/JJ breast/NN] [NP which/WDT] [ADVP probably/RB] "
    "[NP corresponds/NNS] [PP with/IN] [NP a/DT focal/JJ asymmetry/NN] "
    "[VP noted/VBN] [PP in/IN] [NP the/DT lower/JJ aspect/NN] [PP of/IN] "
    "[NP the/DT right/JJ breast/NN]"
)


@pytest.fixture(scope="module")
def fixture_tagger():
    table = load_tag_lexicon(data_dir() / "postags.tsv")
    table["corresponds"] = "NNS"  # reproduce the source tagging for this sentence
    return RuleTagger(table)


def fig_sentence(resources) -> Sentence:
    tokens = tuple(tokenize(FIG_SENTENCE, resources.lexicon))
    return Sentence(index=0, text=FIG_SENTENCE, tokens=tokens)


class TestTagger:
    def test_closed_class(self, resources):
        assert resources.tagger.tag_word("a") == "DT"
        assert resources.tagger.tag_word("of") == "IN"
        assert resources.tagger.tag_word("which") == "WDT"
        assert resources.tagger.tag_word("its") == "PRP$"
        assert resources.tagger.tag_word("and") == "CC"
        assert resources.tagger.tag_word("to") == "TO"

    def test_default_nn(self, resources):
        assert resources.tagger.tag_word("flibber") == "NN"

    def test_suffix_rules(self, resources):
        assert resources.tagger.tag_word("probably") == "RB"
        assert resources.tagger.tag_word("noting") == "VBN"
        assert resources.tagger.tag_word("noted") == "VBN"
        assert resources.tagger.tag_word("calcifications") == "NNS"

    def test_numbers(self, resources):
        assert resources.tagger.tag_word("3") == "CD"
        assert resources.tagger.tag_word("2.5") == "CD"

    def test_fig_sentence_opening(self, resources):
        words = ["again", "seen", "is", "a", "focal", "asymmetry"]
        tags = [t for _, t in pos_tag(words, resources.tagger)]
        assert tags == ["RB", "VBN", "VBZ", "DT", "JJ", "NN"]

    def test_shipped_lexicon_tags_corresponds_vbz(self, resources):
        assert resources.tagger.tag_word("corresponds") == "VBZ"

    def test_unknown_tag_rejected(self):
        with pytest.raises(ValueError):
            RuleTagger({"word": "XYZ"})


class TestChunk:
    def test_np_dt_jj_nn(self, resources):
        chunks = chunk(pos_tag(["the", "medial", "aspect"], resources.tagger))
        assert len(chunks) == 1
        assert chunks[0].pattern == ChunkPattern("NP", ("DT", "JJ", "NN"))
        assert chunks[0].pattern.render() == "[NP: DT JJ NN]"

    def test_pp(self, resources):
        chunks = chunk(pos_tag(["of"], resources.tagger))
        assert chunks[0].pattern == ChunkPattern("PP", ("IN",))

    def test_empty(self):
        assert chunk([]) == []

    def test_partition_invariant(self, fixture_corpus, resources):
        # concatenated chunk tags reproduce the sentence tag sequence
        for report in fixture_corpus.reports[:20]:
            for sentence in report.sentences:
                words = sentence_words(sentence)
                tagged = pos_tag(words, resources.tagger)
                chunks = chunk(tagged)
                flat = [t for c in chunks for t in c.pattern.tags]
                assert flat == [t for _, t in tagged]
                flat_words = [w for c in chunks for w in c.words]
                assert flat_words == words


class TestExtractSyntax:
    def test_fig_sentence_bracketing(self, resources, fixture_tagger):
        syntax = extract_syntax(fig_sentence(resources), ["focal asymmetry"], fixture_tagger)
        assert syntax.tagged_with_words == FIG_BRACKETING

    def test_fig_sentence_np_pattern_count(self, resources, fixture_tagger):
        syntax = extract_syntax(fig_sentence(resources), [], fixture_tagger)
        count, positions = syntax.pattern_occurrences[ChunkPattern("NP", ("DT", "JJ", "NN"))]
        assert count == 6
        assert positions == (4, 6, 8, 13, 16, 18)

    def test_tags_only_is_word_stripped_derivation(self, resources, fixture_tagger):
        syntax = extract_syntax(fig_sentence(resources), [], fixture_tagger)
        derived = re.sub(r"[^\s\[\]]+/", "", syntax.tagged_with_words)
        assert derived == syntax.tags_only

    def test_important_term_locations(self, resources, fixture_tagger):
        syntax = extract_syntax(fig_sentence(resources), ["focal asymmetry"], fixture_tagger)
        assert len(syntax.important_term_locations["focal asymmetry"]) == 2

    def test_single_chunk_sentence(self, resources):
        tokens = tuple(tokenize("calcification", resources.lexicon))
        sentence = Sentence(index=0, text="calcification", tokens=tokens)
        syntax = extract_syntax(sentence, [], resources.tagger)
        assert list(syntax.pattern_occurrences.values()) == [(1, (1,))]

    def test_counts_sum_to_chunk_total(self, resources, fixture_tagger):
        syntax = extract_syntax(fig_sentence(resources), [], fixture_tagger)
        total = sum(count for count, _ in syntax.pattern_occurrences.values())
        assert total == 18  # the sentence chunks into 18 pieces
        for _, positions in syntax.pattern_occurrences.values():
            assert list(positions) == sorted(positions)

    def test_deterministic_rebuild(self, resources, fixture_tagger):
        a = extract_syntax(fig_sentence(resources), ["focal asymmetry"], fixture_tagger)
        b = extract_syntax(fig_sentence(resources), ["focal asymmetry"], fixture_tagger)
        assert a == b

    def test_stem_matching_for_single_word_terms(self, resources):
        tokens = tuple(tokenize("masses were noted", resources.lexicon))
        sentence = Sentence(index=0, text="masses were noted", tokens=tokens)
        syntax = extract_syntax(sentence, ["mass"], resources.tagger)
        assert syntax.important_term_locations["mass"] == (1,)
