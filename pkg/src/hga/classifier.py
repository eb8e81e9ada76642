"""Character-n-gram multinomial Naive Bayes baseline.

The desk-scale stand-in for a fine-tuned transformer. Its out-of-
vocabulary behavior is what makes classification collapse under the
attack analytically transparent: n-grams unseen in training contribute to
no label, so a fully perturbed text scores as the class priors alone and
the prediction regresses to the prior argmax.

Featurization is codepoint-exact on purpose: no lowercasing, no accent
folding. The attack's entire effect is codepoint identity.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus
from .errors import TrainingError

MODEL_FORMAT = "hga/nb-model@1"


@dataclass(frozen=True)
class NBConfig:
    n_low: int = 2
    n_high: int = 4
    alpha: float = 1.0

    def __post_init__(self):
        if not 1 <= self.n_low <= self.n_high:
            raise ValueError(
                f"need 1 <= n_low <= n_high, got [{self.n_low}, {self.n_high}]"
            )
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


def featurize(text: str, config: NBConfig) -> Counter:
    """Multiset of all contiguous codepoint n-grams, n in [n_low, n_high]."""
    grams: Counter = Counter()
    length = len(text)
    for n in range(config.n_low, config.n_high + 1):
        for i in range(length - n + 1):
            grams[text[i : i + n]] += 1
    return grams


@dataclass(frozen=True)
class NBModel:
    labels: tuple[str, ...]
    log_priors: tuple[float, ...]
    # per label: n-gram -> log P(gram | label), smoothed over the vocabulary
    log_likelihoods: tuple[dict[str, float], ...]
    vocab_size: int
    config: NBConfig

    def save(self, path: str | Path) -> None:
        doc = {
            "format": MODEL_FORMAT,
            "config": {
                "n_low": self.config.n_low,
                "n_high": self.config.n_high,
                "alpha": self.config.alpha,
            },
            "labels": list(self.labels),
            "log_priors": list(self.log_priors),
            "log_likelihoods": [dict(t) for t in self.log_likelihoods],
            "vocab_size": self.vocab_size,
        }
        Path(path).write_text(
            json.dumps(doc, ensure_ascii=False), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "NBModel":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if doc.get("format") != MODEL_FORMAT:
            raise TrainingError(
                f"{path}: not a {MODEL_FORMAT} document "
                f"(format={doc.get('format')!r})"
            )
        return cls(
            labels=tuple(doc["labels"]),
            log_priors=tuple(doc["log_priors"]),
            log_likelihoods=tuple(doc["log_likelihoods"]),
            vocab_size=doc["vocab_size"],
            config=NBConfig(**doc["config"]),
        )


def train(corpus: Corpus, config: NBConfig | None = None) -> NBModel:
    """Multinomial NB with additive smoothing over the training vocabulary.

    Deterministic, no randomness anywhere. Requires at least two labels
    and at least one sample per label.
    """
    config = config or NBConfig()
    if len(corpus) == 0:
        raise TrainingError("cannot train on an empty corpus")
    labels = corpus.labels
    if len(labels) < 2:
        raise TrainingError(
            f"need at least 2 labels to train, got {list(labels)}"
        )

    gram_counts = {label: Counter() for label in labels}
    sample_counts = {label: 0 for label in labels}
    for sample in corpus.samples:
        sample_counts[sample.label] += 1
        gram_counts[sample.label].update(featurize(sample.text, config))

    for label in labels:
        if sample_counts[label] == 0:
            raise TrainingError(f"label {label!r} has zero samples")

    vocab = set()
    for counts in gram_counts.values():
        vocab.update(counts)
    vocab_size = len(vocab)

    total = len(corpus)
    log_priors = tuple(
        math.log(sample_counts[label] / total) for label in labels
    )
    log_likelihoods = []
    for label in labels:
        counts = gram_counts[label]
        denom = sum(counts.values()) + config.alpha * vocab_size
        log_likelihoods.append(
            {
                gram: math.log((counts[gram] + config.alpha) / denom)
                for gram in vocab
            }
        )

    return NBModel(
        labels=labels,
        log_priors=log_priors,
        log_likelihoods=tuple(log_likelihoods),
        vocab_size=vocab_size,
        config=config,
    )


def predict(model: NBModel, text: str) -> tuple[str, list[float]]:
    """Argmax label and per-label log-scores; ties go to the smallest id.

    N-grams absent from the training vocabulary are skipped entirely: they
    shift no label, which is exactly the collapse mechanism under attack.
    """
    grams = featurize(text, model.config)
    scores = list(model.log_priors)
    for gram, count in grams.items():
        if gram in model.log_likelihoods[0]:
            for i in range(len(model.labels)):
                scores[i] += count * model.log_likelihoods[i][gram]
    best = 0
    for i in range(1, len(scores)):
        if scores[i] > scores[best]:
            best = i
    return model.labels[best], scores


def predict_corpus(model: NBModel, corpus: Corpus) -> list[str]:
    return [predict(model, s.text)[0] for s in corpus.samples]
