"""Homograph attack, defense, and evaluation toolkit.

Perturbs Latin text with visually identical Unicode homographs, measures
the classification damage with before/after macro metrics, and restores
the canonical text through a skeleton-based defense layer.
"""

from .adapter import AdapterClient, eval_via_adapter
from .attack import AttackConfig, AttackReport, Substitution, perturb_corpus, perturb_text
from .classifier import NBConfig, NBModel, featurize, predict, predict_corpus, train
from .confusables import ConfusableMap, Violation, builtin_map, load_map, validate
from .corpus import (
    Corpus,
    CorpusStats,
    Sample,
    SplitSpec,
    load_corpus,
    merge,
    remove_emoji,
    save_corpus,
    split,
    stats,
    tokenize,
)
from .defense import NormalizationReport, detect, normalize_corpus, normalize_text
from .errors import (
    AdapterProtocolError,
    CorpusFormatError,
    HgaError,
    MapFormatError,
    MetricsError,
    SplitError,
    TrainingError,
)
from .metrics import (
    BeforeAfterReport,
    ConfusionMatrix,
    EvalResult,
    before_after,
    confusion,
    evaluate,
    macro_metrics,
    relative_decrease,
)
from .pipeline import PipelineConfig, PipelineResult, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "AdapterClient",
    "AdapterProtocolError",
    "AttackConfig",
    "AttackReport",
    "BeforeAfterReport",
    "ConfusableMap",
    "ConfusionMatrix",
    "Corpus",
    "CorpusFormatError",
    "CorpusStats",
    "EvalResult",
    "HgaError",
    "MapFormatError",
    "MetricsError",
    "NBConfig",
    "NBModel",
    "NormalizationReport",
    "PipelineConfig",
    "PipelineResult",
    "Sample",
    "SplitError",
    "SplitSpec",
    "Substitution",
    "TrainingError",
    "Violation",
    "before_after",
    "builtin_map",
    "confusion",
    "detect",
    "eval_via_adapter",
    "evaluate",
    "featurize",
    "load_corpus",
    "load_map",
    "macro_metrics",
    "merge",
    "normalize_corpus",
    "normalize_text",
    "perturb_corpus",
    "perturb_text",
    "predict",
    "predict_corpus",
    "relative_decrease",
    "remove_emoji",
    "run_pipeline",
    "save_corpus",
    "split",
    "stats",
    "tokenize",
    "train",
    "validate",
]
