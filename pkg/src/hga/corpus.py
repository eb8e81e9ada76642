"""Corpus ingestion, label harmonization, splitting, and dataset statistics.

Supported input formats: CSV/TSV with a header row, and JSONL with one
object per line. Labels are strings; numeric labels found in files are
coerced with ``str()`` before alias lookup, so ``1`` and ``"1"`` are the
same label.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import CorpusFormatError, HgaError, SplitError
from .rng import SplitMix64

FORMATS = ("csv", "tsv", "jsonl")

# Codepoint ranges stripped by remove_emoji, inclusive.
EMOJI_RANGES = (
    (0x1F600, 0x1F64F),  # Emoticons
    (0x1F300, 0x1F5FF),  # Misc Symbols and Pictographs
    (0x1F680, 0x1F6FF),  # Transport and Map Symbols
    (0x1F900, 0x1F9FF),  # Supplemental Symbols and Pictographs
    (0x2700, 0x27BF),    # Dingbats
    (0x2600, 0x26FF),    # Misc Symbols
    (0xFE0E, 0xFE0F),    # variation selectors (text/emoji presentation)
    (0x200D, 0x200D),    # zero width joiner
)


@dataclass(frozen=True)
class Sample:
    text: str
    label: str


@dataclass(frozen=True)
class Corpus:
    """Ordered samples plus a label2id table (ids 0..n-1, declaration order)."""

    samples: tuple[Sample, ...]
    label2id: dict[str, int]

    @classmethod
    def from_samples(
        cls, samples, labels: list[str] | None = None
    ) -> "Corpus":
        """Build a corpus; label ids follow ``labels`` order, or first-seen."""
        samples = tuple(samples)
        if labels is None:
            labels = []
            seen = set()
            for s in samples:
                if s.label not in seen:
                    seen.add(s.label)
                    labels.append(s.label)
        label2id = {lab: i for i, lab in enumerate(labels)}
        for s in samples:
            if s.label not in label2id:
                raise CorpusFormatError(
                    f"sample label {s.label!r} not in label set {labels}"
                )
        return cls(samples=samples, label2id=label2id)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.label2id)

    def texts(self) -> list[str]:
        return [s.text for s in self.samples]

    def with_texts(self, texts) -> "Corpus":
        """Same labels and order, new text per sample."""
        texts = list(texts)
        if len(texts) != len(self.samples):
            raise ValueError(
                f"{len(texts)} texts for {len(self.samples)} samples"
            )
        new = tuple(
            Sample(text=t, label=s.label) for t, s in zip(texts, self.samples)
        )
        return Corpus(samples=new, label2id=dict(self.label2id))

    def subset(self, indices) -> "Corpus":
        return Corpus(
            samples=tuple(self.samples[i] for i in indices),
            label2id=dict(self.label2id),
        )

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)


@dataclass(frozen=True)
class LoadSummary:
    rows_read: int
    rows_kept: int
    dropped_empty: int


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    val_fraction: float = 0.1
    test_fraction: float = 0.1
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        fractions = (self.train_fraction, self.val_fraction, self.test_fraction)
        if any(f <= 0 for f in fractions):
            raise SplitError(f"split fractions must be positive, got {fractions}")
        if abs(sum(fractions) - 1.0) > 1e-9:
            raise SplitError(f"split fractions must sum to 1, got {fractions}")


@dataclass(frozen=True)
class CorpusStats:
    total_size: int
    n_classes: int
    class_distribution: dict[str, int]
    avg_token_length: float
    type_token_ratio: float

    def to_json_dict(self) -> dict:
        return {
            "schema": "hga/corpus-stats@1",
            "total_size": self.total_size,
            "n_classes": self.n_classes,
            "class_distribution": dict(self.class_distribution),
            "avg_token_length": self.avg_token_length,
            "type_token_ratio": self.type_token_ratio,
        }


def _iter_rows(path: Path, fmt: str, text_field: str, label_field: str):
    """Yield (lineno, text, label) triples from a corpus file."""
    if fmt == "jsonl":
        with path.open("r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorpusFormatError(
                        f"{path}:{lineno}: invalid JSON: {exc}"
                    ) from exc
                if text_field not in row or label_field not in row:
                    raise CorpusFormatError(
                        f"{path}:{lineno}: missing field "
                        f"{text_field!r} or {label_field!r}"
                    )
                yield lineno, str(row[text_field]), str(row[label_field])
    elif fmt in ("csv", "tsv"):
        delim = "," if fmt == "csv" else "\t"
        with path.open("r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f, delimiter=delim)
            if reader.fieldnames is None:
                raise CorpusFormatError(f"{path}: empty file, no header row")
            for name in (text_field, label_field):
                if name not in reader.fieldnames:
                    raise CorpusFormatError(
                        f"{path}: header lacks field {name!r} "
                        f"(has {reader.fieldnames})"
                    )
            for lineno, row in enumerate(reader, start=2):
                text = row.get(text_field)
                label = row.get(label_field)
                if text is None or label is None:
                    raise CorpusFormatError(
                        f"{path}:{lineno}: short row, missing "
                        f"{text_field!r} or {label_field!r}"
                    )
                yield lineno, text, str(label)
    else:
        raise CorpusFormatError(f"unknown format {fmt!r}, expected {FORMATS}")


def load_corpus(
    path: str | Path,
    fmt: str = "jsonl",
    text_field: str = "text",
    label_field: str = "label",
    label_alias: dict[str, str] | None = None,
    label_set: list[str] | None = None,
) -> tuple[Corpus, LoadSummary]:
    """Load a labeled corpus file.

    Rows whose text is empty after whitespace trim are dropped and counted
    in the returned summary. Labels pass through ``label_alias`` before id
    assignment; with a closed ``label_set``, an unmapped label is an error
    and ids follow the given order, otherwise first-seen order.
    """
    path = Path(path)
    alias = label_alias or {}
    samples: list[Sample] = []
    rows_read = 0
    dropped = 0
    for lineno, text, label in _iter_rows(path, fmt, text_field, label_field):
        rows_read += 1
        if not text.strip():
            dropped += 1
            continue
        label = alias.get(label, label)
        if label_set is not None and label not in label_set:
            raise CorpusFormatError(
                f"{path}:{lineno}: label {label!r} not in closed label set "
                f"{label_set}"
            )
        samples.append(Sample(text=text, label=label))
    corpus = Corpus.from_samples(samples, labels=label_set)
    return corpus, LoadSummary(rows_read, len(samples), dropped)


def save_corpus(
    corpus: Corpus,
    path: str | Path,
    fmt: str = "jsonl",
    text_field: str = "text",
    label_field: str = "label",
) -> None:
    """Write a corpus in any supported format (inverse of load_corpus)."""
    path = Path(path)
    if fmt == "jsonl":
        with path.open("w", encoding="utf-8") as f:
            for s in corpus.samples:
                f.write(
                    json.dumps(
                        {text_field: s.text, label_field: s.label},
                        ensure_ascii=False,
                    )
                    + "\n"
                )
    elif fmt in ("csv", "tsv"):
        delim = "," if fmt == "csv" else "\t"
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, delimiter=delim)
            writer.writerow([text_field, label_field])
            for s in corpus.samples:
                writer.writerow([s.text, s.label])
    else:
        raise CorpusFormatError(f"unknown format {fmt!r}, expected {FORMATS}")


def merge(
    corpora: list[Corpus], label_alias: dict[str, str] | None = None
) -> Corpus:
    """Concatenate corpora under one shared label2id table.

    With an alias table, ids follow the order aliases (and their targets)
    first appear in it; every corpus label must be an alias key or an alias
    target. Without one, all corpora must already share a label set.
    """
    if not corpora:
        raise CorpusFormatError("nothing to merge")

    if label_alias is None:
        shared = list(corpora[0].labels)
        for c in corpora[1:]:
            orphans = [lab for lab in c.labels if lab not in shared]
            if orphans:
                raise CorpusFormatError(
                    f"label {orphans[0]!r} has no alias into the shared set "
                    f"{shared}"
                )
        alias: dict[str, str] = {}
    else:
        alias = dict(label_alias)
        shared = []
        for target in alias.values():
            if target not in shared:
                shared.append(target)
        for c in corpora:
            for lab in c.labels:
                if lab not in alias and lab not in shared:
                    raise CorpusFormatError(
                        f"label {lab!r} has no alias into the shared set "
                        f"{shared}"
                    )

    merged = [
        Sample(text=s.text, label=alias.get(s.label, s.label))
        for c in corpora
        for s in c.samples
    ]
    return Corpus.from_samples(merged, labels=shared)


def round_half_up(x: Fraction | float) -> int:
    """Round to the nearest integer, halves away from zero upward."""
    frac = Fraction(x)
    floor = frac.numerator // frac.denominator
    return floor + 1 if (frac - floor) >= Fraction(1, 2) else floor


def _split_sizes(n: int, spec: SplitSpec) -> tuple[int, int, int]:
    """val/test sizes are round-half-up; train absorbs the remainder."""
    n_val = round_half_up(Fraction(spec.val_fraction) * n)
    n_test = round_half_up(Fraction(spec.test_fraction) * n)
    n_train = n - n_val - n_test
    if n_train < 0:
        raise SplitError(
            f"cannot split {n} samples into val={n_val}, test={n_test}"
        )
    return n_train, n_val, n_test


def split(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus, Corpus]:
    """Deterministic exact partition into train/val/test.

    Uses a seeded Fisher-Yates shuffle of sample indices; stratified mode
    applies the size rule class by class. Samples keep their original
    relative order inside each split.
    """
    n = len(corpus)
    if n == 0:
        raise SplitError("cannot split an empty corpus")
    rng = SplitMix64(spec.seed)
    train_idx: list[int] = []
    val_idx: list[int] = []
    test_idx: list[int] = []

    if spec.stratified:
        for label in corpus.labels:
            class_idx = [
                i for i, s in enumerate(corpus.samples) if s.label == label
            ]
            if len(class_idx) < 3:
                raise SplitError(
                    f"stratified split infeasible: class {label!r} has "
                    f"{len(class_idx)} samples, need at least 3"
                )
            rng.shuffle(class_idx)
            c_train, c_val, c_test = _split_sizes(len(class_idx), spec)
            train_idx += class_idx[:c_train]
            val_idx += class_idx[c_train : c_train + c_val]
            test_idx += class_idx[c_train + c_val :]
    else:
        order = list(range(n))
        rng.shuffle(order)
        n_train, n_val, _ = _split_sizes(n, spec)
        train_idx = order[:n_train]
        val_idx = order[n_train : n_train + n_val]
        test_idx = order[n_train + n_val :]

    return (
        corpus.subset(sorted(train_idx)),
        corpus.subset(sorted(val_idx)),
        corpus.subset(sorted(test_idx)),
    )


def remove_emoji(text: str) -> str:
    """Strip codepoints in the documented emoji blocks; keep everything else."""
    return "".join(
        ch
        for ch in text
        if not any(lo <= ord(ch) <= hi for lo, hi in EMOJI_RANGES)
    )


def tokenize(text: str) -> list[str]:
    """The toolkit's tokenizer: whitespace split after emoji removal."""
    return remove_emoji(text).split()


def stats(corpus: Corpus) -> CorpusStats:
    """Dataset statistics: size, class balance, tokens per sample, TTR.

    The type-token ratio is corpus-global and case-sensitive: distinct
    tokens divided by total tokens, computed after emoji removal.
    """
    if len(corpus) == 0:
        raise HgaError("cannot compute stats of an empty corpus")
    distribution = {label: 0 for label in corpus.labels}
    total_tokens = 0
    types: set[str] = set()
    for s in corpus.samples:
        distribution[s.label] += 1
        tokens = tokenize(s.text)
        total_tokens += len(tokens)
        types.update(tokens)
    if total_tokens == 0:
        raise HgaError("corpus has no tokens after emoji removal")
    return CorpusStats(
        total_size=len(corpus),
        n_classes=len(corpus.labels),
        class_distribution=distribution,
        avg_token_length=total_tokens / len(corpus),
        type_token_ratio=len(types) / total_tokens,
    )
