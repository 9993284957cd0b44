from __future__ import annotations

import pytest

from biradscheck.classifier import save_model
from biradscheck.cli import EXIT_INCONSISTENT, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from biradscheck.evaluation import classifier_csv, evaluate_classifier
from biradscheck.resources import fixture_corpus_dir


@pytest.fixture(scope="module")
def model_path(tmp_path_factory, trained_model):
    path = tmp_path_factory.mktemp("cli") / "model.json"
    save_model(trained_model, path)
    return path


@pytest.fixture()
def consistent_report(tmp_path):
    path = tmp_path / "ok.txt"
    path.write_text(
        "FINDINGS: A spiculated mass is present. Axillary adenopathy is present. "
        "IMPRESSION: Highly suggestive of malignancy. BI-RADS category 5.",
        encoding="utf-8",
    )
    return path


@pytest.fixture()
def inconsistent_report(tmp_path):
    path = tmp_path / "off.txt"
    path.write_text(
        "FINDINGS: A spiculated mass is present in the upper outer left breast. "
        "Fine linear branching calcifications extend toward the nipple. "
        "Associated axillary adenopathy is present. "
        "IMPRESSION: Negative examination. BI-RADS category 1.",
        encoding="utf-8",
    )
    return path


class TestTrainCommand:
    def test_train_and_reuse(self, tmp_path, capsys):
        out = tmp_path / "model.json"
        code = main(["train", "--corpus", str(fixture_corpus_dir()), "--out", str(out)])
        assert code == EXIT_OK
        assert out.is_file()
        assert "trained on 70 reports" in capsys.readouterr().out

    def test_train_twice_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["train", "--corpus", str(fixture_corpus_dir()), "--out", str(a)])
        main(["train", "--corpus", str(fixture_corpus_dir()), "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_bad_weights(self, tmp_path, capsys):
        code = main([
            "train", "--corpus", str(fixture_corpus_dir()),
            "--out", str(tmp_path / "m.json"), "--weights", "1,1,1",
        ])
        assert code == EXIT_IO


class TestClassifyCommand:
    def test_output_is_deterministic(self, model_path, consistent_report, capsys):
        main(["classify", "--model", str(model_path), str(consistent_report)])
        first = capsys.readouterr().out
        main(["classify", "--model", str(model_path), str(consistent_report)])
        second = capsys.readouterr().out
        assert first == second
        assert "<- inferred" in first
        assert "BI-RADS 5" in first

    def test_missing_file_exit_io(self, model_path, capsys):
        code = main(["classify", "--model", str(model_path), "/nope/missing.txt"])
        assert code == EXIT_IO


class TestCheckCommand:
    def test_consistent_exit_zero(self, model_path, consistent_report, capsys):
        code = main(["check", "--model", str(model_path), str(consistent_report)])
        assert code == EXIT_OK
        assert "verdict: consistent" in capsys.readouterr().out

    def test_inconsistent_exit_three_with_scorecard(self, model_path,
                                                    inconsistent_report, capsys):
        code = main(["check", "--model", str(model_path), str(inconsistent_report)])
        assert code == EXIT_INCONSISTENT
        out = capsys.readouterr().out
        assert "verdict: inconsistent" in out
        assert "<- inferred" in out  # full scorecard printed


class TestNormalizeCommand:
    def test_lists_detections(self, tmp_path, capsys):
        report = tmp_path / "r.txt"
        report.write_text("FINDINGS: A nodule and heterogeneous calcifications.")
        code = main(["normalize", str(report)])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "nodule\t-> mass" in out
        assert "heterogeneous" in out

    def test_clean_file(self, tmp_path, capsys):
        report = tmp_path / "r.txt"
        report.write_text("FINDINGS: A mass is seen.")
        main(["normalize", str(report)])
        assert "no unsanctioned terms" in capsys.readouterr().out


class TestEvalCommand:
    def test_matches_module_csv(self, model_path, tmp_path, capsys,
                                trained_model, fixture_corpus, resources):
        csv_path = tmp_path / "eval.csv"
        code = main([
            "eval", "--model", str(model_path),
            "--corpus", str(fixture_corpus_dir()), "--csv", str(csv_path),
        ])
        assert code == EXIT_OK
        expected = classifier_csv(evaluate_classifier(trained_model, fixture_corpus,
                                                      resources))
        assert csv_path.read_text(encoding="utf-8") == expected
        out = capsys.readouterr().out
        assert "Total:" in out


class TestUsage:
    def test_unknown_command_exit_one(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == EXIT_USAGE

    def test_missing_required_flag_exit_one(self):
        with pytest.raises(SystemExit) as err:
            main(["train", "--corpus", "x"])
        assert err.value.code == EXIT_USAGE
