from __future__ import annotations

import pytest

from biradscheck.errors import DanglingReplacement, DuplicateTerm, MissingReplacement
from biradscheck.lexicon import (
    Lexicon,
    LexiconEntry,
    Synset,
    LexicalResource,
    load_lexicon,
    load_synsets,
    serialize_lexicon,
)
from biradscheck.resources import data_dir

TABLE2_TERMS = [
    "density", "vague density", "nodule", "ovoid", "lobulated",
    "poorly-defined", "stellate", "layering", "teacup", "tubular",
    "tram-track", "predominantly round", "casting", "indeterminate",
    "heterogeneous", "loosely grouped", "ductal",
]


class TestBundledLexicon:
    def test_all_seventeen_unsanctioned_terms_present(self, resources):
        unsanctioned = set(resources.lexicon.unsanctioned_terms())
        assert unsanctioned == set(TABLE2_TERMS)

    def test_closed_under_replacements(self, resources):
        for entry in resources.lexicon:
            for replacement in entry.replacements:
                target = resources.lexicon.lookup(replacement)
                assert target is not None and target.kind == "sanctioned"

    def test_lookup_examples(self, resources):
        nodule = resources.lexicon.lookup("nodule")
        assert nodule.kind == "unsanctioned" and nodule.replacements == ("mass",)
        heterogeneous = resources.lexicon.lookup("heterogeneous")
        assert heterogeneous.kind == "unsanctioned"
        assert resources.lexicon.lookup("mass").kind == "sanctioned"
        assert resources.lexicon.lookup("zebra") is None

    def test_serialize_roundtrip(self, resources, tmp_path):
        path = tmp_path / "lexicon.tsv"
        path.write_text(serialize_lexicon(resources.lexicon), encoding="utf-8")
        again = load_lexicon(path)
        assert {e.term: (e.kind, e.replacements) for e in again} == {
            e.term: (e.kind, e.replacements) for e in resources.lexicon
        }


class TestLexiconValidation:
    def test_duplicate_term(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("density\tsanctioned\t\ndensity\tsanctioned\t\n")
        with pytest.raises(DuplicateTerm):
            load_lexicon(path)

    def test_missing_replacement(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("stellate\tunsanctioned\t\n")
        with pytest.raises(MissingReplacement):
            load_lexicon(path)

    def test_dangling_replacement(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("nodule\tunsanctioned\tmass\n")
        with pytest.raises(DanglingReplacement):
            load_lexicon(path)

    def test_replacement_must_be_sanctioned(self):
        entries = [
            LexiconEntry("nodule", "unsanctioned", ("density",)),
            LexiconEntry("density", "unsanctioned", ("nodule",)),
        ]
        with pytest.raises(DanglingReplacement):
            Lexicon(entries)

    def test_terms_lowercased(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("MASS\tsanctioned\t\nNodule\tunsanctioned\tmass\n")
        lexicon = load_lexicon(path)
        assert lexicon.lookup("mass") is not None
        assert lexicon.lookup("nodule").replacements == ("mass",)

    def test_multiword_index_longest_first(self, resources):
        index = resources.lexicon.multiword_index()
        focal = index["focal"]
        assert ("focal", "asymmetry") in focal
        fine = index["fine"]
        assert fine[0] == ("fine", "linear", "branching")  # longest first


class TestLexicalResource:
    def test_bundled_synsets_parse(self, resources):
        assert len(resources.synsets.synsets) > 100

    def test_member_stemming_matches_tokenizer(self, resources):
        # written as "calcifications" in the file; stored stemmed
        assert "calcification" in resources.synsets
        assert "focal asymmetry" in resources.synsets  # multiword kept verbatim

    def test_same_synset_distance_zero(self, resources):
        assert resources.synsets.word_distance("mass", "nodule") == 0

    def test_parent_child_distance_one(self, resources):
        assert resources.synsets.word_distance("mass", "lesion") == 1

    def test_unknown_member(self, resources):
        assert resources.synsets.word_distance("mass", "zzz") is None

    def test_cycle_detection(self):
        with pytest.raises(ValueError):
            LexicalResource(
                [Synset("a", ("x",), "b"), Synset("b", ("y",), "a")]
            )

    def test_unknown_parent(self):
        with pytest.raises(ValueError):
            LexicalResource([Synset("a", ("x",), "nope")])

    def test_forest_cross_tree_distance_none(self):
        resource = LexicalResource(
            [Synset("a", ("x",), None), Synset("b", ("y",), None)]
        )
        assert resource.word_distance("x", "y") is None

    def test_bundled_file_is_a_forest(self):
        # load_synsets validates parents and cycles on the shipped file
        resource = load_synsets(data_dir() / "synsets.tsv")
        assert "mass" in resource
