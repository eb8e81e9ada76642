"""Defense layer: detect confusable codepoints and restore canonical Latin.

The scope is exactly the active map's skeleton domain. Codepoints outside
it, including the whole Arabic block, pass through bit-exact, so mixed
Arabic/Latin corpora keep their Arabic-script content. Texts that
legitimately contain confusable codepoints (say, genuine Cyrillic words)
will be rewritten too; use :func:`detect` to measure that before
committing to the rewrite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .confusables import ConfusableMap, format_codepoint
from .corpus import Corpus


@dataclass(frozen=True)
class Flag:
    index: int      # position in the codepoint sequence
    offending: str  # the confusable codepoint found
    restored: str   # the Latin letter it maps back to

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "offending": format_codepoint(self.offending),
            "restored": self.restored,
        }


@dataclass(frozen=True)
class NormalizationReport:
    flagged: tuple[Flag, ...] = field(default=())

    @property
    def replaced_count(self) -> int:
        return len(self.flagged)

    def to_json_dict(self) -> dict:
        return {
            "replaced_count": self.replaced_count,
            "flagged": [f.to_json_dict() for f in self.flagged],
        }


def detect(text: str, cmap: ConfusableMap) -> NormalizationReport:
    """Flag every codepoint in the skeleton domain without modifying text."""
    flagged = tuple(
        Flag(i, ch, cmap.skeleton[ch])
        for i, ch in enumerate(text)
        if ch in cmap.skeleton
    )
    return NormalizationReport(flagged)


def normalize_text(
    text: str, cmap: ConfusableMap
) -> tuple[str, NormalizationReport]:
    """Rewrite every confusable codepoint to its Latin skeleton letter.

    Codepoint length is preserved (one scalar in, one scalar out) and the
    report lists every replacement; idempotent because restored letters
    are ASCII and ASCII is never in the skeleton domain.
    """
    report = detect(text, cmap)
    if not report.flagged:
        return text, report
    chars = list(text)
    for flag in report.flagged:
        chars[flag.index] = flag.restored
    return "".join(chars), report


def normalize_corpus(
    corpus: Corpus, cmap: ConfusableMap
) -> tuple[Corpus, list[NormalizationReport]]:
    """Element-wise normalize_text; labels and order preserved."""
    texts: list[str] = []
    reports: list[NormalizationReport] = []
    for sample in corpus.samples:
        clean, report = normalize_text(sample.text, cmap)
        texts.append(clean)
        reports.append(report)
    return corpus.with_texts(texts), reports


def corpus_report_json(reports: list[NormalizationReport]) -> dict:
    """Aggregate JSON document for corpus detection/normalization."""
    return {
        "schema": "hga/normalization-report@1",
        "total_flagged": sum(r.replaced_count for r in reports),
        "samples": [r.to_json_dict() for r in reports],
    }
