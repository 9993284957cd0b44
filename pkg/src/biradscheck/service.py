"""Local HTTP/JSON API over the pipeline.

Endpoints (bodies documented in docs/api.md):
  POST /normalize  text -> unsanctioned-term detections + spelling suggestions
  POST /classify   report text -> scorecard + consistency verdict
  POST /submit     accepted report -> stored in the corpus, centroid extended,
                   model swapped atomically and persisted
  POST /train      full rebuild from the corpus directory (409 when one is
                   already running)
  GET  /model      bundle metadata
  GET  /health     liveness probe

Readers always see one consistent bundle: every request takes a single
snapshot reference; writers build a new bundle and swap it in under a
lock (copy-rebuild-swap, never in-place mutation).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .classifier import (
    ModelBundle,
    check_consistency,
    extend_model,
    load_model,
    save_model,
    train,
)
from .corpus import WORD_RE, load_corpus, parse_report, store_report
from .errors import BiradsError, ConfigError, ResourceMismatch
from .normalizer import Detection, detect_unsanctioned, suggest_spelling
from .resources import Resources, load_resources
from .similarity import AggregationWeights
from .summarizer import SummarizerConfig

API_VERSION = "1"


@dataclass(frozen=True)
class ServiceConfig:
    corpus_dir: Path
    model_path: Path
    host: str = "127.0.0.1"
    port: int = 8437
    lexicon_dir: Path | None = None
    k: int = 12
    boost_factor: float = 2.0
    w_sem: float = 0.6
    w_pat: float = 0.2
    w_term: float = 0.2

    def summarizer_config(self) -> SummarizerConfig:
        return SummarizerConfig(k=self.k, boost_factor=self.boost_factor)

    def weights(self) -> AggregationWeights:
        return AggregationWeights(self.w_sem, self.w_pat, self.w_term).validate()


def load_config(path: str | Path) -> ServiceConfig:
    """key=value file; '#' comments. corpus_dir and model_path are required."""
    values: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{line_no}: expected key=value")
        key, value = stripped.split("=", 1)
        values[key.strip()] = value.strip()
    try:
        corpus_dir = Path(values["corpus_dir"])
        model_path = Path(values["model_path"])
    except KeyError as exc:
        raise ConfigError(f"missing required setting {exc.args[0]!r}") from exc
    config = ServiceConfig(
        corpus_dir=corpus_dir,
        model_path=model_path,
        host=values.get("host", "127.0.0.1"),
        port=int(values.get("port", "8437")),
        lexicon_dir=Path(values["lexicon_dir"]) if "lexicon_dir" in values else None,
        k=int(values.get("k", "12")),
        boost_factor=float(values.get("boost_factor", "2.0")),
        w_sem=float(values.get("w_sem", "0.6")),
        w_pat=float(values.get("w_pat", "0.2")),
        w_term=float(values.get("w_term", "0.2")),
    )
    validate_config(config)
    return config


def validate_config(config: ServiceConfig) -> None:
    if not 1024 <= config.port <= 65535:
        raise ConfigError(f"port {config.port} outside 1024..65535")
    if not config.corpus_dir.is_dir():
        raise ConfigError(f"corpus_dir does not exist: {config.corpus_dir}")
    if config.lexicon_dir is not None and not config.lexicon_dir.is_dir():
        raise ConfigError(f"lexicon_dir does not exist: {config.lexicon_dir}")
    config.summarizer_config()
    config.weights()


class ModelHolder:
    """Atomic reference to the current bundle plus the writer lock."""

    def __init__(self, bundle: ModelBundle):
        self._bundle = bundle
        self._swap_lock = threading.Lock()
        self.train_lock = threading.Lock()

    def get(self) -> ModelBundle:
        return self._bundle

    def swap(self, bundle: ModelBundle) -> None:
        with self._swap_lock:
            self._bundle = bundle


class NormalizeRequest(BaseModel):
    text: str


class ClassifyRequest(BaseModel):
    text: str


class ReplacementSpan(BaseModel):
    start: int
    end: int
    replacement: str


class SubmitRequest(BaseModel):
    report_id: str
    text: str
    accepted_category: int = Field(ge=0, le=6)
    accepted_replacements: list[ReplacementSpan] = []


def _detection_doc(d: Detection) -> dict:
    return {
        "start": d.start,
        "end": d.end,
        "term": d.found_term,
        "kind": d.kind,
        "suggestions": list(d.suggestions),
    }


def _scorecard_doc(scorecard) -> dict:
    return {
        "scores": {str(c): s for c, s in sorted(scorecard.scores.items())},
        "percent": {str(c): p for c, p in sorted(scorecard.percentages().items())},
        "inferred": scorecard.inferred,
        "ties": list(scorecard.ties),
    }


def _verdict_doc(verdict) -> dict:
    return {"status": verdict.status, "reported": verdict.reported}


def _spelling_vocabulary(bundle: ModelBundle, resources: Resources) -> dict[str, int]:
    """Single words the spell checker treats as known: lexicon terms, synset
    members, tag lexicon words, stopwords, and every stem seen at training
    (frequency-weighted so suggestions prefer common corpus words)."""
    vocab: dict[str, int] = {}
    for term in resources.lexicon.terms():
        for word in term.split():
            vocab.setdefault(word, 0)
    for member in resources.synsets.members():
        for word in member.split():
            vocab.setdefault(word, 0)
    for word in resources.tagger.tag_lexicon:
        vocab.setdefault(word, 0)
    for word in resources.stopwords:
        vocab.setdefault(word, 0)
    for centroid in bundle.centroids.values():
        for stats in centroid.term_table.values():
            for word in stats.term.split():
                vocab[word] = vocab.get(word, 0) + stats.raw_tf
    return vocab


def find_misspellings(
    text: str,
    vocabulary: dict[str, int],
    skip_spans: list[tuple[int, int]],
    max_distance: int = 2,
) -> list[Detection]:
    """Word tokens absent from the vocabulary (and from any detection
    span), with ranked suggestions. Short and numeric tokens are ignored."""
    from .corpus import stem_word

    found = []
    for m in WORD_RE.finditer(text):
        word = m.group(0).lower()
        if len(word) < 4 or word[0].isdigit():
            continue
        if any(start <= m.start() < end for start, end in skip_spans):
            continue
        if word in vocabulary or stem_word(word) in vocabulary:
            continue
        suggestions = suggest_spelling(word, vocabulary, max_distance)
        found.append(
            Detection(
                start=m.start(),
                end=m.end(),
                found_term=word,
                kind="misspelling",
                suggestions=tuple(suggestions),
            )
        )
    return found


def create_app(
    config: ServiceConfig,
    resources: Resources | None = None,
    bundle: ModelBundle | None = None,
) -> FastAPI:
    """Build the application; trains from the corpus directory when no
    model file exists yet."""
    validate_config(config)
    if resources is None:
        resources = load_resources(config.lexicon_dir)
    if bundle is None:
        if config.model_path.is_file():
            bundle = load_model(config.model_path)
            if bundle.lexicon_digest != resources.digest:
                raise ResourceMismatch(
                    "model at startup was trained with different resources"
                )
        else:
            corpus = load_corpus(config.corpus_dir, resources.lexicon)
            bundle = train(
                corpus, resources, config.summarizer_config(), config.weights()
            )
            save_model(bundle, config.model_path)

    holder = ModelHolder(bundle)
    app = FastAPI(title="biradscheck", version=API_VERSION)
    app.state.holder = holder
    app.state.resources = resources
    app.state.config = config

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request body"})

    @app.exception_handler(BiradsError)
    async def domain_error(request: Request, exc: BiradsError):
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/model")
    def model_meta():
        current = holder.get()
        return {
            "version": API_VERSION,
            "format_version": current.format_version,
            "lexicon_digest": current.lexicon_digest,
            "config": {
                "k": current.config.k,
                "boost_factor": current.config.boost_factor,
                "weights": [
                    current.weights.w_sem,
                    current.weights.w_pat,
                    current.weights.w_term,
                ],
            },
            "report_counts": {
                str(c): v.report_count for c, v in sorted(current.centroids.items())
            },
        }

    @app.post("/normalize")
    def normalize(body: NormalizeRequest):
        current = holder.get()
        detections = detect_unsanctioned(body.text, resources.lexicon)
        vocabulary = _spelling_vocabulary(current, resources)
        spans = [(d.start, d.end) for d in detections]
        misspellings = find_misspellings(body.text, vocabulary, spans)
        return {
            "version": API_VERSION,
            "detections": [_detection_doc(d) for d in detections],
            "misspellings": [_detection_doc(d) for d in misspellings],
        }

    @app.post("/classify")
    def classify_report(body: ClassifyRequest):
        current = holder.get()
        report = parse_report(body.text, resources.lexicon)
        verdict = check_consistency(report, current, resources)
        return {
            "version": API_VERSION,
            "scorecard": _scorecard_doc(verdict.scorecard),
            "verdict": _verdict_doc(verdict),
        }

    @app.post("/submit")
    def submit(body: SubmitRequest):
        text = body.text
        if body.accepted_replacements:
            from .normalizer import apply_replacements

            text = apply_replacements(
                text,
                [((r.start, r.end), r.replacement) for r in body.accepted_replacements],
            )
        report = parse_report(text, resources.lexicon, report_id=body.report_id)
        if not holder.train_lock.acquire(blocking=False):
            return JSONResponse(status_code=409, content={"error": "training in progress"})
        try:
            current = holder.get()
            new_bundle = extend_model(
                current, report, body.accepted_category, resources
            )
            path = store_report(config.corpus_dir, report, body.accepted_category, text)
            save_model(new_bundle, config.model_path)
            holder.swap(new_bundle)
        finally:
            holder.train_lock.release()
        return {
            "version": API_VERSION,
            "stored": str(path),
            "category": body.accepted_category,
            "report_count": new_bundle.centroids[body.accepted_category].report_count,
        }

    @app.post("/train")
    def retrain():
        if not holder.train_lock.acquire(blocking=False):
            return JSONResponse(status_code=409, content={"error": "training in progress"})
        try:
            corpus = load_corpus(config.corpus_dir, resources.lexicon)
            new_bundle = train(
                corpus, resources, config.summarizer_config(), config.weights()
            )
            save_model(new_bundle, config.model_path)
            holder.swap(new_bundle)
        finally:
            holder.train_lock.release()
        return {
            "version": API_VERSION,
            "reports": sum(c.report_count for c in new_bundle.centroids.values()),
        }

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service with uvicorn (blocking)."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
