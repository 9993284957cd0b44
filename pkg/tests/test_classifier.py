from __future__ import annotations

import json

import pytest

from biradscheck.classifier import (
    CONSISTENT,
    INCONSISTENT,
    UNLABELED,
    ModelBundle,
    Scorecard,
    check_consistency,
    classify,
    load_model,
    model_to_json,
    percent,
    save_model,
    train,
    verdict_from_scorecard,
)
from biradscheck.corpus import LabeledCorpus, parse_report, replace
from biradscheck.errors import (
    CorruptModel,
    MissingCategory,
    MissingFindings,
    ResourceMismatch,
    VersionMismatch,
)


def small_corpus(resources, per_category=3):
    texts = {
        0: "Additional imaging is required. The study is limited.",
        1: "Both breasts are symmetric. The examination is negative.",
        2: "A calcified fibroadenoma is present. Vascular calcifications are noted.",
        3: "A focal asymmetry is probably benign. Short interval follow-up is suggested.",
        4: "An irregular mass with indistinct margins is seen. Biopsy is recommended.",
        5: "A spiculated mass is present. Fine linear branching calcifications are seen.",
        6: "The biopsy proven carcinoma is unchanged. A marker clip is present.",
    }
    reports = []
    for category, findings in texts.items():
        for i in range(per_category):
            raw = f"FINDINGS: {findings} IMPRESSION: BI-RADS category {category}."
            reports.append(
                parse_report(raw, resources.lexicon, report_id=f"s{category}-{i}")
            )
    return LabeledCorpus(tuple(reports))


@pytest.fixture(scope="module")
def small_model(resources):
    return train(small_corpus(resources), resources)


class TestTrain:
    def test_seven_centroids_with_counts(self, resources, small_model):
        assert sorted(small_model.centroids) == list(range(7))
        assert all(c.report_count == 3 for c in small_model.centroids.values())

    def test_missing_category(self, resources):
        corpus = small_corpus(resources)
        partial = LabeledCorpus(
            tuple(r for r in corpus if r.reported_category != 5)
        )
        with pytest.raises(MissingCategory) as err:
            train(partial, resources)
        assert err.value.categories == (5,)

    def test_deterministic_bytes(self, resources):
        corpus = small_corpus(resources)
        a = model_to_json(train(corpus, resources))
        b = model_to_json(train(corpus, resources))
        assert a == b

    def test_lexicon_digest_recorded(self, resources, small_model):
        assert small_model.lexicon_digest == resources.digest


class TestClassify:
    def test_verbatim_representative_report_scores_one(self, resources, small_model):
        centroid = small_model.centroids[5]
        findings = " ".join(rep.sentence.text for rep in centroid.representatives[:2])
        raw = f"FINDINGS: {findings} IMPRESSION: none."
        report = parse_report(raw, resources.lexicon, report_id="probe")
        scorecard = classify(report, small_model, resources)
        assert scorecard.inferred == 5

    def test_single_report_centroid_identity_scores_exactly_one(self, resources):
        corpus = small_corpus(resources, per_category=1)
        model = train(corpus, resources)
        probe = replace(corpus.reports[3], reported_category=None)
        scorecard = classify(probe, model, resources)
        assert scorecard.scores[3] == 1.0
        assert scorecard.inferred == 3

    def test_scorecard_invariants(self, resources, small_model, fixture_corpus):
        for report in fixture_corpus.reports[:10]:
            scorecard = classify(report, small_model, resources)
            assert sorted(scorecard.scores) == list(range(7))
            best = max(scorecard.scores.values())
            assert scorecard.scores[scorecard.inferred] == best
            assert scorecard.inferred in scorecard.ties
            assert list(scorecard.ties) == sorted(scorecard.ties, reverse=True)
            assert all(0.0 <= s <= 1.0 for s in scorecard.scores.values())

    def test_missing_findings(self, resources, small_model):
        report = parse_report("FINDINGS: x IMPRESSION: y.", resources.lexicon)
        broken = replace(report, sentences=(), sections={"findings": ""})
        with pytest.raises(MissingFindings):
            classify(broken, small_model, resources)

    def test_resource_mismatch(self, resources, small_model):
        from dataclasses import replace as dc_replace

        tampered = dc_replace(small_model, lexicon_digest="0" * 64)
        report = parse_report("FINDINGS: A mass. IMPRESSION: none.", resources.lexicon)
        with pytest.raises(ResourceMismatch):
            classify(report, tampered, resources)


class TestScorecard:
    def test_injected_argmax_fixture(self):
        scores = {0: 0.10, 1: 0.50, 2: 0.4583, 3: 0.20, 4: 0.434, 5: 0.15, 6: 0.05}
        scorecard = Scorecard.from_scores(scores)
        assert scorecard.inferred == 1
        assert scorecard.percentages()[4] == "43.40"
        assert scorecard.percentages()[1] == "50.00"
        assert scorecard.percentages()[2] == "45.83"

    def test_all_equal_ties_to_six(self):
        scorecard = Scorecard.from_scores({c: 0.5 for c in range(7)})
        assert scorecard.inferred == 6
        assert scorecard.ties == (6, 5, 4, 3, 2, 1, 0)

    def test_partial_tie(self):
        scores = {0: 0.1, 1: 0.9, 2: 0.9, 3: 0.2, 4: 0.3, 5: 0.1, 6: 0.2}
        scorecard = Scorecard.from_scores(scores)
        assert scorecard.inferred == 2
        assert scorecard.ties == (2, 1)

    def test_needs_all_seven(self):
        with pytest.raises(ValueError):
            Scorecard.from_scores({0: 1.0})

    def test_percent_rendering(self):
        assert percent(0.5) == "50.00"
        assert percent(0.4583) == "45.83"
        assert percent(1.0) == "100.00"
        assert percent(0.005) == "0.50"


class TestConsistency:
    def test_consistent(self):
        scorecard = Scorecard.from_scores({c: (0.9 if c == 3 else 0.1) for c in range(7)})
        verdict = verdict_from_scorecard(3, scorecard)
        assert verdict.status == CONSISTENT

    def test_inconsistent_fig_scenario(self):
        scores = {0: 0.10, 1: 0.50, 2: 0.4583, 3: 0.20, 4: 0.434, 5: 0.15, 6: 0.05}
        verdict = verdict_from_scorecard(4, Scorecard.from_scores(scores))
        assert verdict.status == INCONSISTENT
        assert verdict.reported == 4
        assert verdict.scorecard.inferred == 1

    def test_unlabeled(self):
        scorecard = Scorecard.from_scores({c: 0.1 for c in range(7)})
        verdict = verdict_from_scorecard(None, scorecard)
        assert verdict.status == UNLABELED

    def test_end_to_end(self, resources, small_model):
        raw = "FINDINGS: A spiculated mass is present. IMPRESSION: BI-RADS category 1."
        report = parse_report(raw, resources.lexicon, report_id="x")
        verdict = check_consistency(report, small_model, resources)
        assert verdict.reported == 1
        assert verdict.status in (CONSISTENT, INCONSISTENT)
        assert (verdict.status == CONSISTENT) == (verdict.scorecard.inferred == 1)


class TestPersistence:
    def test_roundtrip_equality(self, resources, small_model, tmp_path):
        path = tmp_path / "model.json"
        save_model(small_model, path)
        again = load_model(path)
        assert again == small_model

    def test_classify_invariant_under_roundtrip(self, resources, small_model,
                                                fixture_corpus, tmp_path):
        path = tmp_path / "model.json"
        save_model(small_model, path)
        again = load_model(path)
        for report in fixture_corpus.reports[:5]:
            assert classify(report, again, resources) == classify(
                report, small_model, resources
            )

    def test_tampered_digest_field(self, small_model, tmp_path):
        path = tmp_path / "model.json"
        save_model(small_model, path)
        doc = json.loads(path.read_text())
        doc["payload"]["lexicon_digest"] = "f" * 64
        path.write_text(json.dumps(doc))
        with pytest.raises(CorruptModel):
            load_model(path)

    def test_version_mismatch(self, small_model, tmp_path):
        import hashlib

        path = tmp_path / "model.json"
        save_model(small_model, path)
        doc = json.loads(path.read_text())
        doc["payload"]["format_version"] = "0.0"
        canonical = json.dumps(doc["payload"], sort_keys=True,
                               separators=(",", ":"), ensure_ascii=False)
        doc["payload_digest"] = hashlib.sha256(canonical.encode()).hexdigest()
        path.write_text(json.dumps(doc))
        with pytest.raises(VersionMismatch):
            load_model(path)

    def test_garbage_file(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text("{not json")
        with pytest.raises(CorruptModel):
            load_model(path)


class TestTieBreakDeterminism:
    def test_centroid_storage_order_irrelevant(self, resources, small_model,
                                               fixture_corpus):
        shuffled = ModelBundle(
            centroids={c: small_model.centroids[c] for c in (4, 2, 6, 0, 5, 1, 3)},
            config=small_model.config,
            weights=small_model.weights,
            lexicon_digest=small_model.lexicon_digest,
        )
        for report in fixture_corpus.reports[:6]:
            assert classify(report, shuffled, resources) == classify(
                report, small_model, resources
            )
