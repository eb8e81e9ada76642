import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hga.metrics import (
    ConfusionMatrix,
    before_after,
    confusion,
    evaluate,
    fmt_metric,
    fmt_percent,
    macro_metrics,
    relative_decrease,
    render_before_after,
    round_half_up_decimal,
)
from hga.errors import MetricsError


def brute_force_macro(counts):
    """Independent exact-rational recomputation of macro metrics."""
    n = len(counts)
    ps, rs, fs = [], [], []
    for i in range(n):
        tp = counts[i][i]
        fp = sum(counts[g][i] for g in range(n)) - tp
        fn = sum(counts[i]) - tp
        p = Fraction(tp, tp + fp) if tp + fp else Fraction(0)
        r = Fraction(tp, tp + fn) if tp + fn else Fraction(0)
        f = 2 * p * r / (p + r) if p + r else Fraction(0)
        ps.append(p)
        rs.append(r)
        fs.append(f)
    total = sum(map(sum, counts))
    trace = sum(counts[i][i] for i in range(n))
    return (
        float(sum(ps) / n),
        float(sum(rs) / n),
        float(sum(fs) / n),
        float(Fraction(trace, total)),
    )


def test_confusion_diagonal():
    m = confusion(["p", "n"], ["p", "n"], ["p", "n"])
    assert m.counts == ((1, 0), (0, 1))
    m = confusion(["p", "n"], ["n", "p"], ["p", "n"])
    assert m.counts == ((0, 1), (1, 0))


def test_confusion_random_tally_matches_brute_force():
    rng = random.Random(99)
    labels = ["a", "b", "c"]
    golds = [rng.choice(labels) for _ in range(200)]
    preds = [rng.choice(labels) for _ in range(200)]
    m = confusion(golds, preds, labels)
    for i, g in enumerate(labels):
        for j, p in enumerate(labels):
            want = sum(1 for x, y in zip(golds, preds) if x == g and y == p)
            assert m.counts[i][j] == want
    assert m.total == 200


def test_confusion_errors():
    with pytest.raises(MetricsError, match="vs"):
        confusion(["a"], ["a", "b"], ["a", "b"])
    with pytest.raises(MetricsError, match="unknown gold"):
        confusion(["z"], ["a"], ["a"])
    with pytest.raises(MetricsError, match="unknown predicted"):
        confusion(["a"], ["z"], ["a"])


def test_perfect_diagonal_all_ones():
    m = ConfusionMatrix(("a", "b", "c"), ((5, 0, 0), (0, 3, 0), (0, 0, 2)))
    r = macro_metrics(m)
    assert (r.macro_precision, r.macro_recall, r.macro_f1, r.accuracy) == (
        1.0, 1.0, 1.0, 1.0)


def test_empty_matrix_rejected():
    m = ConfusionMatrix(("a", "b"), ((0, 0), (0, 0)))
    with pytest.raises(MetricsError, match="empty"):
        macro_metrics(m)


def test_collapse_case_matches_frozen_oracle(frozen):
    # all 100 predictions go to the class with 49 gold samples
    golds = ["pos"] * 49 + ["neg"] * 51
    preds = ["pos"] * 100
    r = evaluate(golds, preds, ["pos", "neg"])
    want = frozen["collapse_49_of_100"]
    assert r.macro_precision == want["macro_precision"]
    assert r.macro_recall == want["macro_recall"]
    assert r.macro_f1 == pytest.approx(want["macro_f1"], abs=1e-15)
    assert r.accuracy == want["accuracy"]
    shown = [fmt_metric(v) for v in
             (r.macro_precision, r.macro_recall, r.macro_f1, r.accuracy)]
    assert shown == ["0.25", "0.50", "0.33", "0.49"]


def test_exhaustive_2x2_against_brute_force():
    for a, b, c, d in itertools.product(range(6), repeat=4):
        counts = ((a, b), (c, d))
        m = ConfusionMatrix(("x", "y"), counts)
        if a + b + c + d == 0:
            with pytest.raises(MetricsError):
                macro_metrics(m)
            continue
        r = macro_metrics(m)
        p, rr, f, acc = brute_force_macro(counts)
        assert r.macro_precision == pytest.approx(p, abs=1e-12)
        assert r.macro_recall == pytest.approx(rr, abs=1e-12)
        assert r.macro_f1 == pytest.approx(f, abs=1e-12)
        assert r.accuracy == pytest.approx(acc, abs=1e-12)


@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=60),
       st.randoms(use_true_random=False))
def test_permutation_invariance(golds, rng):
    preds = [rng.choice("abc") for _ in golds]
    pairs = list(zip(golds, preds))
    r1 = evaluate([g for g, _ in pairs], [p for _, p in pairs], "abc")
    rng.shuffle(pairs)
    r2 = evaluate([g for g, _ in pairs], [p for _, p in pairs], "abc")
    assert r1.macro_f1 == r2.macro_f1
    assert r1.accuracy == r2.accuracy


@given(st.randoms(use_true_random=False))
def test_relabeling_invariance(rng):
    golds = [rng.choice("abc") for _ in range(40)]
    preds = [rng.choice("abc") for _ in range(40)]
    r1 = evaluate(golds, preds, "abc")
    mapping = {"a": "Q", "b": "R", "c": "S"}
    r2 = evaluate([mapping[g] for g in golds], [mapping[p] for p in preds],
                  ["Q", "R", "S"])
    assert r1.macro_precision == r2.macro_precision
    assert r1.macro_recall == r2.macro_recall
    assert r1.macro_f1 == r2.macro_f1
    assert r1.accuracy == r2.accuracy


def test_relative_decrease_reference_pairs(frozen):
    for (ba, aa), want in zip(frozen["reference_f1_pairs"],
                              frozen["reference_f1_decreases"]):
        assert float(fmt_percent(relative_decrease(ba, aa))) == want


def test_relative_decrease_identity_and_errors():
    assert relative_decrease(0.5, 0.5) == 0.0
    with pytest.raises(MetricsError):
        relative_decrease(0.0, 0.1)


def test_rounding_is_half_up_not_bankers():
    assert round_half_up_decimal(0.125, 2) == 0.13
    assert round_half_up_decimal(0.135, 2) == 0.14
    assert round_half_up_decimal(2.5, 0) == 3.0
    assert fmt_metric(0.325) == "0.33"
    assert fmt_percent(65.25) == "65.3"
    # float round() would give 0.12 and 2 here
    assert round(0.125, 2) == 0.12
    assert round(2.5) == 2


def test_before_after_report_and_schema(check_schema):
    clean = evaluate(["p", "n"], ["p", "n"], ["p", "n"])
    hit = evaluate(["p", "n"], ["p", "p"], ["p", "n"])
    report = before_after(clean, hit)
    assert report.relative_f1_decrease_percent == pytest.approx(
        100 * (1 - hit.macro_f1), abs=1e-12)
    doc = report.to_json_dict()
    assert "defended" not in doc
    check_schema(doc, "before-after")
    defended = before_after(clean, hit, defended=clean)
    doc = defended.to_json_dict()
    assert doc["defended"] == clean.to_json_dict()
    check_schema(doc, "before-after")


def test_render_before_after_layout():
    clean = evaluate(["p", "n"], ["p", "n"], ["p", "n"])
    hit = evaluate(["p", "n"], ["p", "p"], ["p", "n"])
    text = render_before_after(before_after(clean, hit), name="nb-char")
    header, row = text.splitlines()
    assert "F1 (BA/AA)" in header
    assert "(1.00/0.33)" in row
    assert "% ↓" in row
    with_def = render_before_after(
        before_after(clean, hit, defended=clean), name="m")
    assert "BA/AA/AD" in with_def
    assert "(1.00/0.33/1.00)" in with_def
