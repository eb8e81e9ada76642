"""FastAPI application exposing the toolkit over HTTP.

The normalization endpoints are the deployment form of the defense: put
``POST /normalize`` in front of any classifier that accepts raw text and
confusable codepoints are restored before they reach the model. Attack,
stats, and metric endpoints round out the harness for remote clients.

The active confusable map is chosen at application creation (explicit
path argument, else the ``HGA_MAP`` environment variable, else builtin)
and shared read-only across requests.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..attack import AttackConfig, perturb_text
from ..confusables import builtin_map, load_map, validate as validate_map
from ..corpus import Corpus, Sample, stats as corpus_stats
from ..defense import detect, normalize_text
from ..errors import HgaError
from ..metrics import confusion, macro_metrics, relative_decrease
from .models import (
    AttackRequest,
    AttackResponse,
    DetectResponse,
    EvaluateRequest,
    EvaluateResponse,
    HealthResponse,
    MapInfoResponse,
    MapValidationResponse,
    MapViolation,
    NormalizeResponse,
    RelativeDecreaseRequest,
    RelativeDecreaseResponse,
    StatsRequest,
    StatsResponse,
    TextsRequest,
)

MAP_ENV_VAR = "HGA_MAP"


def create_app(map_path: str | None = None) -> FastAPI:
    path = map_path or os.environ.get(MAP_ENV_VAR)
    cmap = load_map(path) if path else builtin_map()

    app = FastAPI(
        title="hga",
        version=__version__,
        description="Homograph attack, defense, and evaluation service.",
    )

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(
            status="ok", version=__version__, map_source=cmap.source_name
        )

    @app.get("/map", response_model=MapInfoResponse)
    def map_info():
        return MapInfoResponse(
            source=cmap.source_name,
            letters=len(cmap.forward),
            homographs=cmap.entry_count,
        )

    @app.get("/map/validate", response_model=MapValidationResponse)
    def map_validate():
        violations = validate_map(cmap)
        return MapValidationResponse(
            source=cmap.source_name,
            errors=sum(1 for v in violations if v.severity == "error"),
            warnings=sum(1 for v in violations if v.severity == "warning"),
            violations=[
                MapViolation(
                    severity=v.severity, message=v.message, codepoint=v.codepoint
                )
                for v in violations
            ],
        )

    @app.post("/attack", response_model=AttackResponse)
    def attack(request: AttackRequest):
        try:
            config = AttackConfig(rate=request.rate, seed=request.seed)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        texts, reports = [], []
        for i, text in enumerate(request.texts):
            attacked, report = perturb_text(text, cmap, config, sample_index=i)
            texts.append(attacked)
            reports.append(report.to_json_dict())
        return AttackResponse(
            texts=texts,
            reports=reports,
            total_eligible=sum(r["eligible_count"] for r in reports),
            total_substituted=sum(r["substituted_count"] for r in reports),
        )

    @app.post("/detect", response_model=DetectResponse)
    def detect_endpoint(request: TextsRequest):
        reports = [detect(t, cmap).to_json_dict() for t in request.texts]
        return DetectResponse(
            reports=reports,
            total_flagged=sum(r["replaced_count"] for r in reports),
        )

    @app.post("/normalize", response_model=NormalizeResponse)
    def normalize(request: TextsRequest):
        texts, reports = [], []
        for text in request.texts:
            clean, report = normalize_text(text, cmap)
            texts.append(clean)
            reports.append(report.to_json_dict())
        return NormalizeResponse(
            texts=texts,
            reports=reports,
            total_flagged=sum(r["replaced_count"] for r in reports),
        )

    @app.post("/stats", response_model=StatsResponse)
    def stats(request: StatsRequest):
        try:
            corpus = Corpus.from_samples(
                Sample(text=s.text, label=s.label) for s in request.samples
            )
            result = corpus_stats(corpus)
        except HgaError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return StatsResponse(**{
            k: v for k, v in result.to_json_dict().items() if k != "schema"
        })

    @app.post("/evaluate", response_model=EvaluateResponse)
    def evaluate_endpoint(request: EvaluateRequest):
        try:
            matrix = confusion(request.golds, request.preds, request.labels)
            result = macro_metrics(matrix)
        except HgaError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        doc = result.to_json_dict()
        doc["confusion"] = [list(row) for row in matrix.counts]
        return EvaluateResponse(**doc)

    @app.post("/metrics/relative-decrease", response_model=RelativeDecreaseResponse)
    def relative_decrease_endpoint(request: RelativeDecreaseRequest):
        try:
            percent = relative_decrease(request.before_f1, request.after_f1)
        except HgaError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return RelativeDecreaseResponse(relative_decrease_percent=percent)

    return app


app = create_app()
