"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str
    map_source: str


class MapInfoResponse(BaseModel):
    source: str
    letters: int
    homographs: int


class MapViolation(BaseModel):
    severity: str
    message: str
    codepoint: str | None = None


class MapValidationResponse(BaseModel):
    source: str
    errors: int
    warnings: int
    violations: list[MapViolation]


class AttackRequest(BaseModel):
    texts: list[str]
    rate: float = Field(default=0.9, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)


class SubstitutionModel(BaseModel):
    index: int
    original: str
    replacement: str


class AttackSampleReport(BaseModel):
    eligible_count: int
    substituted_count: int
    substitutions: list[SubstitutionModel]


class AttackResponse(BaseModel):
    texts: list[str]
    reports: list[AttackSampleReport]
    total_eligible: int
    total_substituted: int


class TextsRequest(BaseModel):
    texts: list[str]


class FlagModel(BaseModel):
    index: int
    offending: str
    restored: str


class NormalizationSampleReport(BaseModel):
    replaced_count: int
    flagged: list[FlagModel]


class DetectResponse(BaseModel):
    reports: list[NormalizationSampleReport]
    total_flagged: int


class NormalizeResponse(DetectResponse):
    texts: list[str]


class SampleModel(BaseModel):
    text: str
    label: str


class StatsRequest(BaseModel):
    samples: list[SampleModel]


class StatsResponse(BaseModel):
    total_size: int
    n_classes: int
    class_distribution: dict[str, int]
    avg_token_length: float
    type_token_ratio: float


class EvaluateRequest(BaseModel):
    golds: list[str]
    preds: list[str]
    labels: list[str]


class PerLabelMetrics(BaseModel):
    precision: float
    recall: float
    f1: float


class EvaluateResponse(BaseModel):
    labels: list[str]
    per_label: dict[str, PerLabelMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float
    confusion: list[list[int]]


class RelativeDecreaseRequest(BaseModel):
    before_f1: float
    after_f1: float


class RelativeDecreaseResponse(BaseModel):
    relative_decrease_percent: float
