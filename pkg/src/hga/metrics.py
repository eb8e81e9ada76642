"""Confusion-matrix metrics: macro P/R/F1, accuracy, before/after pairing.

Averaging is macro (unweighted mean over labels) throughout. A per-label
precision or recall with a 0/0 numerator and denominator is defined as 0,
which is what makes the majority-collapse case well defined: a class that
receives no predictions contributes zeros, not NaNs.

Raw values stay at full float precision in JSON; display rounding is
half-up, two decimals for metrics and one decimal for the relative
decrease percentage.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .errors import MetricsError


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[i][j] = samples with gold label i predicted as label j."""

    labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "counts": [list(row) for row in self.counts],
        }


@dataclass(frozen=True)
class EvalResult:
    labels: tuple[str, ...]
    per_label_precision: tuple[float, ...]
    per_label_recall: tuple[float, ...]
    per_label_f1: tuple[float, ...]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "per_label": {
                label: {
                    "precision": self.per_label_precision[i],
                    "recall": self.per_label_recall[i],
                    "f1": self.per_label_f1[i],
                }
                for i, label in enumerate(self.labels)
            },
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "accuracy": self.accuracy,
        }


@dataclass(frozen=True)
class BeforeAfterReport:
    before: EvalResult
    after: EvalResult
    relative_f1_decrease_percent: float
    defended: EvalResult | None = None

    def to_json_dict(self) -> dict:
        doc = {
            "schema": "hga/before-after@1",
            "before": self.before.to_json_dict(),
            "after": self.after.to_json_dict(),
            "relative_f1_decrease_percent": self.relative_f1_decrease_percent,
        }
        if self.defended is not None:
            doc["defended"] = self.defended.to_json_dict()
        return doc


def confusion(
    golds: list[str], preds: list[str], labels: tuple[str, ...] | list[str]
) -> ConfusionMatrix:
    """Tally gold/pred pairs into a matrix over the given label order."""
    if len(golds) != len(preds):
        raise MetricsError(
            f"{len(golds)} gold labels vs {len(preds)} predictions"
        )
    labels = tuple(labels)
    index = {label: i for i, label in enumerate(labels)}
    counts = [[0] * len(labels) for _ in labels]
    for gold, pred in zip(golds, preds):
        if gold not in index:
            raise MetricsError(f"unknown gold label {gold!r}")
        if pred not in index:
            raise MetricsError(f"unknown predicted label {pred!r}")
        counts[index[gold]][index[pred]] += 1
    return ConfusionMatrix(labels, tuple(tuple(row) for row in counts))


def macro_metrics(matrix: ConfusionMatrix) -> EvalResult:
    """Per-label P/R/F1 plus macro means and accuracy; 0/0 counts as 0."""
    total = matrix.total
    if total == 0:
        raise MetricsError("empty confusion matrix")
    n = len(matrix.labels)
    precisions, recalls, f1s = [], [], []
    for i in range(n):
        tp = matrix.counts[i][i]
        fp = sum(matrix.counts[g][i] for g in range(n)) - tp
        fn = sum(matrix.counts[i]) - tp
        p = tp / (tp + fp) if tp + fp > 0 else 0.0
        r = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        precisions.append(p)
        recalls.append(r)
        f1s.append(f1)
    trace = sum(matrix.counts[i][i] for i in range(n))
    return EvalResult(
        labels=matrix.labels,
        per_label_precision=tuple(precisions),
        per_label_recall=tuple(recalls),
        per_label_f1=tuple(f1s),
        macro_precision=sum(precisions) / n,
        macro_recall=sum(recalls) / n,
        macro_f1=sum(f1s) / n,
        accuracy=trace / total,
    )


def evaluate(
    golds: list[str], preds: list[str], labels: tuple[str, ...] | list[str]
) -> EvalResult:
    """Convenience: confusion + macro_metrics in one step."""
    return macro_metrics(confusion(golds, preds, labels))


def relative_decrease(before_f1: float, after_f1: float) -> float:
    """Percentage drop 100 * (before - after) / before, full precision."""
    if before_f1 <= 0:
        raise MetricsError(
            f"relative decrease undefined for before_f1={before_f1}"
        )
    return 100.0 * (before_f1 - after_f1) / before_f1


def before_after(
    before: EvalResult, after: EvalResult, defended: EvalResult | None = None
) -> BeforeAfterReport:
    return BeforeAfterReport(
        before=before,
        after=after,
        relative_f1_decrease_percent=relative_decrease(
            before.macro_f1, after.macro_f1
        ),
        defended=defended,
    )


def round_half_up_decimal(x: float, places: int) -> float:
    """Half-up rounding on the shortest decimal representation of x."""
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(quantum, rounding=ROUND_HALF_UP))


def fmt_metric(x: float) -> str:
    return f"{round_half_up_decimal(x, 2):.2f}"


def fmt_percent(x: float) -> str:
    return f"{round_half_up_decimal(x, 1):.1f}"


def render_before_after(report: BeforeAfterReport, name: str = "nb-char") -> str:
    """Aligned text table in the (BA/AA) pairing style, one row per model."""
    b, a, d = report.before, report.after, report.defended
    tag = "BA/AA/AD" if d is not None else "BA/AA"

    def pair(bv: float, av: float, dv: float | None) -> str:
        inner = f"{fmt_metric(bv)}/{fmt_metric(av)}"
        if dv is not None:
            inner += f"/{fmt_metric(dv)}"
        return f"({inner})"

    cells = [
        pair(b.macro_f1, a.macro_f1, d.macro_f1 if d else None)
        + f" ({fmt_percent(report.relative_f1_decrease_percent)}% ↓)",
        pair(b.macro_precision, a.macro_precision, d.macro_precision if d else None),
        pair(b.macro_recall, a.macro_recall, d.macro_recall if d else None),
        pair(b.accuracy, a.accuracy, d.accuracy if d else None),
    ]
    headers = [f"F1 ({tag})", f"P ({tag})", f"R ({tag})", f"Acc ({tag})"]
    widths = [max(len(h), len(c)) for h, c in zip(headers, cells)]
    name_w = max(len("model"), len(name))
    header = "  ".join(
        ["model".ljust(name_w)] + [h.ljust(w) for h, w in zip(headers, widths)]
    )
    row = "  ".join(
        [name.ljust(name_w)] + [c.ljust(w) for c, w in zip(cells, widths)]
    )
    return header + "\n" + row
