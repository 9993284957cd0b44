"""Command-line interface.

Subcommands: train, classify, check, normalize, eval, serve.
Exit codes: 0 success (and `check` consistent), 1 usage error, 2 I/O or
data error, 3 inconsistent report (from `check`).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .classifier import load_model, save_model, train
from .corpus import load_corpus, parse_report
from .errors import BiradsError
from .evaluation import classifier_csv, evaluate_classifier, render_classifier_table
from .normalizer import detect_unsanctioned
from .resources import load_resources
from .similarity import AggregationWeights
from .summarizer import SummarizerConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INCONSISTENT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; the contract is 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="biradscheck", description=__doc__)
    parser.add_argument(
        "--lexicon-dir",
        type=Path,
        default=None,
        help="directory with lexicon.tsv/synsets.tsv/stopwords.txt/postags.tsv "
        "(default: bundled resources)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a model from a corpus directory")
    p_train.add_argument("--corpus", type=Path, required=True)
    p_train.add_argument("--out", type=Path, required=True)
    p_train.add_argument("--k", type=int, default=12)
    p_train.add_argument("--boost", type=float, default=2.0)
    p_train.add_argument(
        "--weights",
        default="0.6,0.2,0.2",
        help="semantic,pattern,term aggregation weights (must sum to 1)",
    )

    p_classify = sub.add_parser("classify", help="print scorecards for report files")
    p_classify.add_argument("--model", type=Path, required=True)
    p_classify.add_argument("files", nargs="+", type=Path)

    p_check = sub.add_parser("check", help="consistency verdict for one report")
    p_check.add_argument("--model", type=Path, required=True)
    p_check.add_argument("file", type=Path)

    p_norm = sub.add_parser("normalize", help="list unsanctioned terms in a report")
    p_norm.add_argument("file", type=Path)

    p_eval = sub.add_parser("eval", help="evaluate a model on a labeled corpus")
    p_eval.add_argument("--model", type=Path, required=True)
    p_eval.add_argument("--corpus", type=Path, required=True)
    p_eval.add_argument("--csv", type=Path, default=None, help="also write CSV here")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", type=Path, required=True)

    return parser


def _parse_weights(text: str) -> AggregationWeights:
    parts = text.split(",")
    if len(parts) != 3:
        raise BiradsError("expected three comma-separated weights")
    w = [float(p) for p in parts]
    return AggregationWeights(w[0], w[1], w[2]).validate()


def _print_scorecard(name: str, scorecard) -> None:
    print(f"report: {name}")
    for category in sorted(scorecard.scores, reverse=True):
        marker = " <- inferred" if category == scorecard.inferred else ""
        print(f"  BI-RADS {category}: {scorecard.percentages()[category]}%{marker}")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BiradsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "serve":
        from .service import load_config, serve

        serve(load_config(args.config))
        return EXIT_OK

    resources = load_resources(args.lexicon_dir)

    if args.command == "train":
        corpus = load_corpus(args.corpus, resources.lexicon)
        config = SummarizerConfig(k=args.k, boost_factor=args.boost)
        model = train(corpus, resources, config, _parse_weights(args.weights))
        save_model(model, args.out)
        print(f"trained on {len(corpus)} reports -> {args.out}")
        return EXIT_OK

    if args.command == "classify":
        from .classifier import classify

        model = load_model(args.model)
        for path in args.files:
            report = parse_report(path.read_text(encoding="utf-8"), resources.lexicon,
                                  report_id=path.stem)
            _print_scorecard(path.name, classify(report, model, resources))
        return EXIT_OK

    if args.command == "check":
        from .classifier import INCONSISTENT, check_consistency

        model = load_model(args.model)
        report = parse_report(args.file.read_text(encoding="utf-8"), resources.lexicon,
                              report_id=args.file.stem)
        verdict = check_consistency(report, model, resources)
        _print_scorecard(args.file.name, verdict.scorecard)
        reported = "none" if verdict.reported is None else verdict.reported
        print(f"reported: {reported}")
        print(f"verdict: {verdict.status}")
        return EXIT_INCONSISTENT if verdict.status == INCONSISTENT else EXIT_OK

    if args.command == "normalize":
        text = args.file.read_text(encoding="utf-8")
        detections = detect_unsanctioned(text, resources.lexicon)
        if not detections:
            print("no unsanctioned terms found")
        for d in detections:
            options = ", ".join(d.suggestions)
            print(f"{d.start}..{d.end}\t{d.found_term}\t-> {options}")
        return EXIT_OK

    if args.command == "eval":
        model = load_model(args.model)
        corpus = load_corpus(args.corpus, resources.lexicon)
        metrics = evaluate_classifier(model, corpus, resources)
        print(render_classifier_table(metrics), end="")
        if args.csv is not None:
            args.csv.write_text(classifier_csv(metrics), encoding="utf-8")
            print(f"csv written to {args.csv}")
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
