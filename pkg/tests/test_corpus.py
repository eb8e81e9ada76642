import json
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hga.corpus import (
    Corpus,
    CorpusFormatError,
    Sample,
    SplitSpec,
    load_corpus,
    merge,
    remove_emoji,
    round_half_up,
    save_corpus,
    split,
    stats,
    tokenize,
)
from hga.errors import HgaError, SplitError


def _corpus(pairs):
    return Corpus.from_samples([Sample(t, l) for t, l in pairs])


def test_label_ids_first_seen_order():
    c = _corpus([("x", "pos"), ("y", "neg"), ("z", "pos")])
    assert c.label2id == {"pos": 0, "neg": 1}
    assert c.labels == ("pos", "neg")


def test_from_samples_closed_labels():
    with pytest.raises(CorpusFormatError, match="not in label set"):
        Corpus.from_samples([Sample("x", "zzz")], labels=["pos", "neg"])


def test_load_jsonl(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"text":"3ajbetni barcha","label":"pos"}\n', encoding="utf-8")
    corpus, summary = load_corpus(p)
    assert len(corpus) == 1
    assert corpus.samples[0] == Sample("3ajbetni barcha", "pos")
    assert corpus.label2id == {"pos": 0}
    assert (summary.rows_read, summary.rows_kept, summary.dropped_empty) == (1, 1, 0)


def test_load_csv_with_alias(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("text,label\nbehi,positive\nkhayb,negative\n", encoding="utf-8")
    corpus, _ = load_corpus(
        p, fmt="csv", label_alias={"positive": "pos", "negative": "neg"}
    )
    assert [s.label for s in corpus.samples] == ["pos", "neg"]


def test_load_tsv(tmp_path):
    p = tmp_path / "c.tsv"
    p.write_text("text\tlabel\nbehi barsha\tpos\n", encoding="utf-8")
    corpus, _ = load_corpus(p, fmt="tsv")
    assert corpus.samples[0].text == "behi barsha"


def test_load_drops_empty_text(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text(
        '{"text":"ok","label":"a"}\n{"text":"   ","label":"a"}\n',
        encoding="utf-8",
    )
    corpus, summary = load_corpus(p)
    assert len(corpus) == 1
    assert summary.dropped_empty == 1
    assert summary.rows_read == 2


def test_load_errors_carry_location(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"text":"ok"}\n', encoding="utf-8")
    with pytest.raises(CorpusFormatError, match=r":1: missing field"):
        load_corpus(p)
    p.write_text("not json\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError, match=r":1: invalid JSON"):
        load_corpus(p)


def test_load_closed_label_set(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"text":"ok","label":"meh"}\n', encoding="utf-8")
    with pytest.raises(CorpusFormatError, match="closed label set"):
        load_corpus(p, label_set=["pos", "neg"])


def test_save_load_round_trip(tmp_path):
    corpus = _corpus([("behi م", "pos"), ("a,b\ttab", "neg")])
    for fmt in ("jsonl", "csv", "tsv"):
        p = tmp_path / f"c.{fmt}"
        save_corpus(corpus, p, fmt=fmt)
        back, _ = load_corpus(p, fmt=fmt)
        assert [(s.text, s.label) for s in back.samples] == [
            (s.text, s.label) for s in corpus.samples
        ]


def test_merge_aliased_label_sets():
    tunizi = _corpus([("behi", "pos"), ("khayb", "neg")])
    tsac = _corpus([("mezyan", "1"), ("3yan", "-1")])
    merged = merge([tunizi, tsac], label_alias={
        "pos": "pos", "neg": "neg", "1": "pos", "-1": "neg",
    })
    assert merged.label2id == {"pos": 0, "neg": 1}
    assert [s.label for s in merged.samples] == ["pos", "neg", "pos", "neg"]


def test_merge_identity():
    c = _corpus([("x", "a"), ("y", "b")])
    m = merge([c])
    assert m.samples == c.samples
    assert m.label2id == c.label2id


def test_merge_orphan_label_is_error():
    a = _corpus([("x", "pos")])
    b = _corpus([("y", "meh")])
    with pytest.raises(CorpusFormatError, match="'meh' has no alias"):
        merge([a, b])
    with pytest.raises(CorpusFormatError, match="'meh' has no alias"):
        merge([a, b], label_alias={"pos": "pos"})


def test_round_half_up_rule():
    cases = [(0, 0), (0.4, 0), (0.5, 1), (1.5, 2), (2.5, 3),
             (Fraction(27, 2), 14), (Fraction(12, 5), 2), (3, 3)]
    for x, want in cases:
        assert round_half_up(x) == want, x


def test_split_spec_validation():
    SplitSpec()
    with pytest.raises(SplitError, match="sum to 1"):
        SplitSpec(0.8, 0.1, 0.2)
    with pytest.raises(SplitError, match="positive"):
        SplitSpec(1.0, 0.0, 0.0)


def test_split_3000_gives_2400_300_300():
    c = _corpus([(f"t{i}", "pos" if i % 2 else "neg") for i in range(3000)])
    train, val, test = split(c, SplitSpec(seed=4))
    assert (len(train), len(val), len(test)) == (2400, 300, 300)


def test_split_10_unstratified():
    c = _corpus([(f"t{i}", "x") for i in range(10)])
    train, val, test = split(c, SplitSpec(seed=0, stratified=False))
    assert (len(train), len(val), len(test)) == (8, 1, 1)


def test_split_is_exact_partition():
    c = _corpus([(f"t{i}", "pos" if i % 3 else "neg") for i in range(101)])
    train, val, test = split(c, SplitSpec(seed=9))
    got = sorted(
        (s.text, s.label)
        for part in (train, val, test)
        for s in part.samples
    )
    assert got == sorted((s.text, s.label) for s in c.samples)
    assert len(train) + len(val) + len(test) == len(c)


def test_split_deterministic():
    c = _corpus([(f"t{i}", "pos" if i % 2 else "neg") for i in range(50)])
    a = split(c, SplitSpec(seed=7))
    b = split(c, SplitSpec(seed=7))
    for pa, pb in zip(a, b):
        assert pa.samples == pb.samples
    other = split(c, SplitSpec(seed=8))
    assert any(pa.samples != po.samples for pa, po in zip(a, other))


def test_split_stratified_proportions():
    c = _corpus(
        [(f"p{i}", "pos") for i in range(80)]
        + [(f"n{i}", "neg") for i in range(20)]
    )
    train, val, test = split(c, SplitSpec(seed=1))
    for part, size in ((train, 80), (val, 10), (test, 10)):
        dist = Counter(s.label for s in part.samples)
        assert abs(dist["pos"] - 0.8 * size) <= 1
        assert abs(dist["neg"] - 0.2 * size) <= 1


def test_split_small_class_error():
    c = _corpus([("a", "pos"), ("b", "pos"), ("c", "pos"), ("d", "neg")])
    with pytest.raises(SplitError, match="class 'neg' has 1"):
        split(c, SplitSpec(seed=0))


def test_split_empty_corpus_error():
    with pytest.raises(SplitError, match="empty"):
        split(Corpus.from_samples([]), SplitSpec())


@given(st.integers(3, 400), st.integers(0, 2**32))
def test_split_partition_property(n, seed):
    c = _corpus([(f"t{i}", "x") for i in range(n)])
    train, val, test = split(c, SplitSpec(seed=seed, stratified=False))
    texts = [s.text for part in (train, val, test) for s in part.samples]
    assert sorted(texts) == sorted(s.text for s in c.samples)


def test_remove_emoji_cases():
    assert remove_emoji("behi \U0001F602") == "behi "
    assert remove_emoji("no emoji here") == "no emoji here"
    # U+1F44D thumbs up + U+1F3FD skin tone modifier, both in the blocks
    assert remove_emoji("\U0001F44D\U0001F3FD") == ""
    assert remove_emoji("a️‍b") == "ab"
    # Arabic is not emoji
    assert remove_emoji("مر") == "مر"


def test_tokenize_handles_emoji_gaps():
    assert tokenize("behi \U0001F602 barsha") == ["behi", "barsha"]
    assert tokenize("a  b") == ["a", "b"]


def test_stats_hand_countable():
    c = _corpus([("a b", "x"), ("a c", "y")])
    s = stats(c)
    assert s.total_size == 2
    assert s.n_classes == 2
    assert s.avg_token_length == 2.0
    assert s.type_token_ratio == 0.75


def test_stats_single_sample():
    s = stats(_corpus([("x x x", "a")]))
    assert s.type_token_ratio == 1 / 3


def test_stats_reorder_invariant():
    pairs = [("a b", "x"), ("c d e", "y"), ("a f", "x")]
    s1 = stats(_corpus(pairs))
    s2 = stats(_corpus(list(reversed(pairs))))
    assert (s1.total_size, s1.avg_token_length, s1.type_token_ratio) == (
        s2.total_size, s2.avg_token_length, s2.type_token_ratio)
    assert s1.class_distribution == s2.class_distribution


def test_stats_matches_fixture_manifest(data_dir, check_schema):
    corpus, summary = load_corpus(data_dir / "fixture_20.jsonl")
    manifest = json.loads((data_dir / "fixture_20_manifest.json").read_text())
    s = stats(corpus)
    assert summary.dropped_empty == 0
    assert s.total_size == manifest["total_size"]
    assert s.n_classes == manifest["n_classes"]
    assert s.class_distribution == manifest["class_distribution"]
    assert s.avg_token_length == manifest["avg_token_length"]
    assert s.type_token_ratio == manifest["type_token_ratio"]
    # tokenizer agrees with the per-sentence hand count
    got = [tokenize(smp.text) for smp in corpus.samples]
    assert got == manifest["per_sentence_tokens"]
    check_schema(s.to_json_dict(), "corpus-stats")


def test_stats_errors():
    with pytest.raises(HgaError, match="empty"):
        stats(Corpus.from_samples([]))
    with pytest.raises(HgaError, match="no tokens"):
        stats(_corpus([("\U0001F602", "x")]))
