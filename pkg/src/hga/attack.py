"""Homograph perturbation attack.

Replaces a configured fraction of eligible Latin letters with homographs
from a :class:`~hga.confusables.ConfusableMap`. A letter is eligible when
it is Basic Latin (A-Z or a-z) and the active map lists at least one
homograph for it; everything else (digits, punctuation, Arabic script,
anything already non-ASCII) passes through untouched.

The substitution count per text is exactly ``round_half_up(rate *
eligible_count)``, computed in exact rational arithmetic on the binary
value of ``rate`` so every implementation of this rule agrees. Positions
are drawn uniformly without replacement; the replacement for each position
is drawn uniformly from the map's ordered candidate list, in ascending
position order, from the same per-sample stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .confusables import ConfusableMap, format_codepoint
from .corpus import Corpus, round_half_up
from .rng import SplitMix64, derive_seed

_UINT64_MAX = (1 << 64) - 1


@dataclass(frozen=True)
class AttackConfig:
    rate: float = 0.9
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"rate must be in [0, 1], got {self.rate}")
        if not 0 <= self.seed <= _UINT64_MAX:
            raise ValueError(f"seed must be a 64-bit unsigned int, got {self.seed}")


@dataclass(frozen=True)
class Substitution:
    index: int        # position in the original codepoint sequence
    original: str     # the Latin letter that was replaced
    replacement: str  # the homograph it became

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "original": format_codepoint(self.original),
            "replacement": format_codepoint(self.replacement),
        }


@dataclass(frozen=True)
class AttackReport:
    eligible_count: int
    substituted_count: int
    substitutions: tuple[Substitution, ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "eligible_count": self.eligible_count,
            "substituted_count": self.substituted_count,
            "substitutions": [s.to_json_dict() for s in self.substitutions],
        }


def substitution_count(rate: float, eligible_count: int) -> int:
    """round_half_up(rate x eligible_count), exact on the binary rate."""
    return round_half_up(Fraction(rate) * eligible_count)


def perturb_text(
    text: str,
    cmap: ConfusableMap,
    config: AttackConfig,
    sample_index: int = 0,
) -> tuple[str, AttackReport]:
    """Attack one text; deterministic in (text, map, config, sample_index).

    The output has exactly the same number of Unicode scalars as the
    input. With zero eligible positions the input is returned unchanged.
    """
    chars = list(text)
    eligible = [i for i, ch in enumerate(chars) if cmap.forward.get(ch)]
    k = substitution_count(config.rate, len(eligible))
    if k == 0:
        return text, AttackReport(len(eligible), 0, ())

    rng = SplitMix64(derive_seed(config.seed, sample_index))
    chosen = rng.sample_without_replacement(len(eligible), k)
    positions = sorted(eligible[c] for c in chosen)

    substitutions = []
    for pos in positions:
        letter = chars[pos]
        candidates = cmap.forward[letter]
        replacement = candidates[rng.below(len(candidates))]
        chars[pos] = replacement
        substitutions.append(Substitution(pos, letter, replacement))

    return "".join(chars), AttackReport(len(eligible), k, tuple(substitutions))


def perturb_corpus(
    corpus: Corpus, cmap: ConfusableMap, config: AttackConfig
) -> tuple[Corpus, list[AttackReport]]:
    """Attack every sample, seeding sample i with derive_seed(seed, i).

    Labels and ordering are untouched, and the result is identical no
    matter how the work is scheduled, because each sample owns its stream.
    """
    attacked_texts: list[str] = []
    reports: list[AttackReport] = []
    for i, sample in enumerate(corpus.samples):
        attacked, report = perturb_text(sample.text, cmap, config, sample_index=i)
        attacked_texts.append(attacked)
        reports.append(report)
    return corpus.with_texts(attacked_texts), reports


def corpus_report_json(
    config: AttackConfig, reports: list[AttackReport]
) -> dict:
    """Aggregate JSON document for a corpus attack (CLI ``--report``)."""
    return {
        "schema": "hga/attack-report@1",
        "rate": config.rate,
        "seed": config.seed,
        "total_eligible": sum(r.eligible_count for r in reports),
        "total_substituted": sum(r.substituted_count for r in reports),
        "samples": [r.to_json_dict() for r in reports],
    }
