"""End-to-end before/after evaluation pipeline.

load corpus -> split -> train baseline on the clean training split ->
evaluate on the clean test split (BA) -> perturb the test split only ->
evaluate again (AA) -> optionally normalize the attacked test split and
evaluate a third time (AD). Training and validation data are never
perturbed. The validation split is produced for protocol parity and for
external-adapter workflows; the Naive Bayes baseline has nothing to tune
on it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .attack import AttackConfig, corpus_report_json, perturb_corpus
from .classifier import NBConfig, predict_corpus, train
from .confusables import ConfusableMap, builtin_map, load_map
from .corpus import Corpus, SplitSpec, load_corpus, save_corpus, split
from .defense import normalize_corpus
from .metrics import BeforeAfterReport, before_after, evaluate


@dataclass(frozen=True)
class PipelineConfig:
    corpus_path: str
    fmt: str = "jsonl"
    text_field: str = "text"
    label_field: str = "label"
    map_path: str | None = None  # None -> builtin map
    attack: AttackConfig = field(default_factory=AttackConfig)
    split_spec: SplitSpec = field(default_factory=SplitSpec)
    nb: NBConfig = field(default_factory=NBConfig)
    defend: bool = False
    out_dir: str | None = None


@dataclass(frozen=True)
class PipelineResult:
    report: BeforeAfterReport
    sizes: dict[str, int]
    total_eligible: int
    total_substituted: int

    def to_json_dict(self, config: PipelineConfig) -> dict:
        return {
            "schema": "hga/pipeline-report@1",
            "run": {
                "corpus": config.corpus_path,
                "rate": config.attack.rate,
                "attack_seed": config.attack.seed,
                "split_seed": config.split_spec.seed,
                "stratified": config.split_spec.stratified,
                "sizes": dict(self.sizes),
                "total_eligible": self.total_eligible,
                "total_substituted": self.total_substituted,
                "defend": config.defend,
            },
            "report": self.report.to_json_dict(),
        }


def _resolve_map(map_path: str | None) -> ConfusableMap:
    return builtin_map() if map_path is None else load_map(map_path)


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    cmap = _resolve_map(config.map_path)
    corpus, _ = load_corpus(
        config.corpus_path,
        fmt=config.fmt,
        text_field=config.text_field,
        label_field=config.label_field,
    )
    return run_pipeline_on_corpus(corpus, cmap, config)


def run_pipeline_on_corpus(
    corpus: Corpus, cmap: ConfusableMap, config: PipelineConfig
) -> PipelineResult:
    train_c, val_c, test_c = split(corpus, config.split_spec)

    model = train(train_c, config.nb)
    golds = [s.label for s in test_c.samples]
    labels = corpus.labels

    before = evaluate(golds, predict_corpus(model, test_c), labels)

    attacked, attack_reports = perturb_corpus(test_c, cmap, config.attack)
    after = evaluate(golds, predict_corpus(model, attacked), labels)

    defended_result = None
    defended_corpus = None
    if config.defend:
        defended_corpus, _ = normalize_corpus(attacked, cmap)
        defended_result = evaluate(
            golds, predict_corpus(model, defended_corpus), labels
        )

    result = PipelineResult(
        report=before_after(before, after, defended_result),
        sizes={"train": len(train_c), "val": len(val_c), "test": len(test_c)},
        total_eligible=sum(r.eligible_count for r in attack_reports),
        total_substituted=sum(r.substituted_count for r in attack_reports),
    )

    if config.out_dir is not None:
        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, part in (("train", train_c), ("val", val_c), ("test", test_c)):
            save_corpus(part, out / f"corpus.{name}.jsonl")
        save_corpus(attacked, out / "test_attacked.jsonl")
        if defended_corpus is not None:
            save_corpus(defended_corpus, out / "test_defended.jsonl")
        model.save(out / "model.json")
        (out / "attack_report.json").write_text(
            json.dumps(corpus_report_json(config.attack, attack_reports)),
            encoding="utf-8",
        )
        (out / "pipeline_report.json").write_text(
            json.dumps(result.to_json_dict(config), ensure_ascii=False),
            encoding="utf-8",
        )

    return result
