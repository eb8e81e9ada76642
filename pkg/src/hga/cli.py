"""Command-line surface.

Every subcommand is a thin wrapper over the library: parse flags, call
the core function, write files or JSON, set the exit code. Exit codes:
0 success, 1 I/O failure, 2 invalid configuration or validation failure.

The default confusable map is the builtin table; ``--map PATH`` overrides
it per command, and the ``HGA_MAP`` environment variable overrides the
default globally.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .attack import AttackConfig, corpus_report_json, perturb_corpus
from .classifier import NBConfig, NBModel, predict_corpus, train as train_model
from .confusables import builtin_map, load_map, validate as validate_map
from .corpus import SplitSpec, load_corpus, save_corpus, split as split_corpus, stats as corpus_stats
from .defense import corpus_report_json as defense_report_json, detect, normalize_corpus
from .errors import HgaError
from .metrics import confusion, evaluate, macro_metrics, render_before_after
from .pipeline import PipelineConfig, run_pipeline

MAP_ENV_VAR = "HGA_MAP"

_format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "tsv", "jsonl"]),
    default="jsonl", show_default=True, help="Corpus file format.",
)
_text_field_option = click.option(
    "--text-field", default="text", show_default=True,
    help="Field holding the sample text.",
)
_label_field_option = click.option(
    "--label-field", default="label", show_default=True,
    help="Field holding the sample label.",
)
_map_option = click.option(
    "--map", "map_path", type=click.Path(), default=None,
    help=f"Confusable map file (default: ${MAP_ENV_VAR} or the builtin map).",
)
_json_option = click.option(
    "--json", "as_json", is_flag=True, help="Emit JSON instead of text."
)


def _handle_errors(fn):
    """Map exceptions to the documented exit codes, message on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except (HgaError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _resolve_map(map_path: str | None):
    path = map_path or os.environ.get(MAP_ENV_VAR)
    return load_map(path) if path else builtin_map()


def _load(path, fmt, text_field, label_field):
    corpus, summary = load_corpus(
        path, fmt=fmt, text_field=text_field, label_field=label_field
    )
    if summary.dropped_empty:
        click.echo(
            f"note: dropped {summary.dropped_empty} empty-text row(s)",
            err=True,
        )
    return corpus


def _write_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(version=__version__, prog_name="hga")
def cli():
    """Homograph attack, defense, and evaluation toolkit."""


@cli.command()
@click.argument("input_path", type=click.Path())
@click.argument("output_path", type=click.Path())
@click.option("--rate", type=float, default=0.9, show_default=True,
              help="Fraction of eligible letters to substitute.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Root seed for deterministic substitution.")
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the full per-sample attack report here.")
@_format_option
@_text_field_option
@_label_field_option
@_map_option
@_json_option
@_handle_errors
def attack(input_path, output_path, rate, seed, report_path, fmt,
           text_field, label_field, map_path, as_json):
    """Perturb a corpus file with homographs."""
    cmap = _resolve_map(map_path)
    config = AttackConfig(rate=rate, seed=seed)
    corpus = _load(input_path, fmt, text_field, label_field)
    attacked, reports = perturb_corpus(corpus, cmap, config)
    save_corpus(attacked, output_path, fmt=fmt,
                text_field=text_field, label_field=label_field)
    doc = corpus_report_json(config, reports)
    if report_path:
        _write_json(doc, report_path)
    summary = {
        "samples": len(attacked),
        "total_eligible": doc["total_eligible"],
        "total_substituted": doc["total_substituted"],
        "rate": rate,
        "seed": seed,
    }
    if as_json:
        _write_json(summary, None)
    else:
        click.echo(
            f"attacked {summary['samples']} samples: "
            f"{summary['total_substituted']}/{summary['total_eligible']} "
            f"eligible letters substituted (rate {rate}, seed {seed})"
        )


@cli.command()
@click.argument("input_path", type=click.Path())
@click.argument("output_path", type=click.Path())
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the full per-sample normalization report here.")
@_format_option
@_text_field_option
@_label_field_option
@_map_option
@_json_option
@_handle_errors
def defend(input_path, output_path, report_path, fmt, text_field,
           label_field, map_path, as_json):
    """Restore confusable codepoints in a corpus file to canonical Latin."""
    cmap = _resolve_map(map_path)
    corpus = _load(input_path, fmt, text_field, label_field)
    clean, reports = normalize_corpus(corpus, cmap)
    save_corpus(clean, output_path, fmt=fmt,
                text_field=text_field, label_field=label_field)
    doc = defense_report_json(reports)
    if report_path:
        _write_json(doc, report_path)
    if as_json:
        _write_json({"samples": len(clean),
                     "total_flagged": doc["total_flagged"]}, None)
    else:
        click.echo(
            f"defended {len(clean)} samples: "
            f"{doc['total_flagged']} confusable codepoints restored"
        )


@cli.command("detect")
@click.argument("input_path", type=click.Path())
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the detection report here instead of stdout.")
@_format_option
@_text_field_option
@_label_field_option
@_map_option
@_handle_errors
def detect_cmd(input_path, report_path, fmt, text_field, label_field, map_path):
    """Report confusable codepoints in a corpus file without rewriting it."""
    cmap = _resolve_map(map_path)
    corpus = _load(input_path, fmt, text_field, label_field)
    reports = [detect(s.text, cmap) for s in corpus.samples]
    _write_json(defense_report_json(reports), report_path)


@cli.command("split")
@click.argument("input_path", type=click.Path())
@click.option("--train", "train_fraction", type=float, default=0.8,
              show_default=True)
@click.option("--val", "val_fraction", type=float, default=0.1,
              show_default=True)
@click.option("--test", "test_fraction", type=float, default=0.1,
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--stratified/--no-stratified", default=True, show_default=True)
@click.option("--output-base", type=click.Path(), default=None,
              help="Base path for outputs (default: input path sans extension).")
@_format_option
@_text_field_option
@_label_field_option
@_handle_errors
def split_cmd(input_path, train_fraction, val_fraction, test_fraction, seed,
              stratified, output_base, fmt, text_field, label_field):
    """Split a corpus into .train/.val/.test files plus a JSON manifest."""
    spec = SplitSpec(
        train_fraction=train_fraction,
        val_fraction=val_fraction,
        test_fraction=test_fraction,
        seed=seed,
        stratified=stratified,
    )
    corpus = _load(input_path, fmt, text_field, label_field)
    parts = split_corpus(corpus, spec)
    base = Path(output_base) if output_base else Path(input_path).with_suffix("")
    ext = "jsonl" if fmt == "jsonl" else fmt
    sizes = {}
    for name, part in zip(("train", "val", "test"), parts):
        out = base.with_name(f"{base.name}.{name}.{ext}")
        save_corpus(part, out, fmt=fmt,
                    text_field=text_field, label_field=label_field)
        sizes[name] = len(part)
    manifest = {
        "schema": "hga/split-manifest@1",
        "seed": seed,
        "stratified": stratified,
        "fractions": {"train": train_fraction, "val": val_fraction,
                      "test": test_fraction},
        "sizes": sizes,
        "total": len(corpus),
    }
    _write_json(manifest, str(base.with_name(f"{base.name}.split.json")))
    click.echo(
        f"split {len(corpus)} samples into "
        f"{sizes['train']}/{sizes['val']}/{sizes['test']} (seed {seed})"
    )


@cli.command("stats")
@click.argument("input_path", type=click.Path())
@_format_option
@_text_field_option
@_label_field_option
@_handle_errors
def stats_cmd(input_path, fmt, text_field, label_field):
    """Dataset statistics (size, class balance, avg tokens, TTR) as JSON."""
    corpus = _load(input_path, fmt, text_field, label_field)
    _write_json(corpus_stats(corpus).to_json_dict(), None)


@cli.command("train")
@click.argument("input_path", type=click.Path())
@click.argument("model_path", type=click.Path())
@click.option("--n-low", type=int, default=2, show_default=True)
@click.option("--n-high", type=int, default=4, show_default=True)
@click.option("--alpha", type=float, default=1.0, show_default=True)
@_format_option
@_text_field_option
@_label_field_option
@_handle_errors
def train_cmd(input_path, model_path, n_low, n_high, alpha, fmt,
              text_field, label_field):
    """Train the character-n-gram Naive Bayes baseline and save it."""
    corpus = _load(input_path, fmt, text_field, label_field)
    model = train_model(corpus, NBConfig(n_low=n_low, n_high=n_high, alpha=alpha))
    model.save(model_path)
    click.echo(
        f"trained on {len(corpus)} samples, "
        f"{model.vocab_size} n-grams, labels {list(model.labels)}"
    )


@cli.command("eval")
@click.argument("model_path", type=click.Path())
@click.argument("input_path", type=click.Path())
@_format_option
@_text_field_option
@_label_field_option
@_json_option
@_handle_errors
def eval_cmd(model_path, input_path, fmt, text_field, label_field, as_json):
    """Evaluate a saved model on a labeled corpus file."""
    model = NBModel.load(model_path)
    corpus = _load(input_path, fmt, text_field, label_field)
    golds = [s.label for s in corpus.samples]
    preds = predict_corpus(model, corpus)
    matrix = confusion(golds, preds, model.labels)
    result = macro_metrics(matrix)
    if as_json:
        _write_json(
            {"schema": "hga/eval-result@1",
             **result.to_json_dict(),
             "confusion": matrix.to_json_dict()},
            None,
        )
    else:
        click.echo(
            f"macro F1 {result.macro_f1:.4f}  P {result.macro_precision:.4f}  "
            f"R {result.macro_recall:.4f}  Acc {result.accuracy:.4f} "
            f"({matrix.total} samples)"
        )


@cli.command("eval-adapter")
@click.argument("adapter_cmd")
@click.argument("input_path", type=click.Path())
@click.option("--timeout", type=float, default=30.0, show_default=True,
              help="Per-batch response timeout in seconds.")
@_format_option
@_text_field_option
@_label_field_option
@_json_option
@_handle_errors
def eval_adapter_cmd(adapter_cmd, input_path, timeout, fmt, text_field,
                     label_field, as_json):
    """Evaluate an external hga-adapter/1 classifier on a labeled corpus.

    ADAPTER_CMD is the adapter command line, quoted as one argument, e.g.
    'python -m hga.stub_adapter --model model.json'.
    """
    from .adapter import eval_via_adapter

    corpus = _load(input_path, fmt, text_field, label_field)
    result = eval_via_adapter(corpus, adapter_cmd, timeout=timeout)
    if as_json:
        _write_json(
            {"schema": "hga/eval-result@1", **result.to_json_dict()}, None
        )
    else:
        click.echo(
            f"macro F1 {result.macro_f1:.4f}  P {result.macro_precision:.4f}  "
            f"R {result.macro_recall:.4f}  Acc {result.accuracy:.4f} "
            f"({len(corpus)} samples via adapter)"
        )


@cli.command("pipeline")
@click.argument("input_path", type=click.Path())
@click.option("--rate", type=float, default=0.9, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="Attack seed.")
@click.option("--split-seed", type=int, default=0, show_default=True)
@click.option("--stratified/--no-stratified", default=True, show_default=True)
@click.option("--defend", "with_defense", is_flag=True,
              help="Add an after-defense (AD) evaluation column.")
@click.option("--out-dir", type=click.Path(), default=None,
              help="Write splits, model, attacked test set, and reports here.")
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Write the pipeline report JSON here.")
@click.option("--n-low", type=int, default=2, show_default=True)
@click.option("--n-high", type=int, default=4, show_default=True)
@click.option("--alpha", type=float, default=1.0, show_default=True)
@_format_option
@_text_field_option
@_label_field_option
@_map_option
@_json_option
@_handle_errors
def pipeline_cmd(input_path, rate, seed, split_seed, stratified, with_defense,
                 out_dir, report_path, n_low, n_high, alpha, fmt, text_field,
                 label_field, map_path, as_json):
    """Full before/after(/defended) degradation run on one corpus."""
    config = PipelineConfig(
        corpus_path=input_path,
        fmt=fmt,
        text_field=text_field,
        label_field=label_field,
        map_path=map_path or os.environ.get(MAP_ENV_VAR),
        attack=AttackConfig(rate=rate, seed=seed),
        split_spec=SplitSpec(seed=split_seed, stratified=stratified),
        nb=NBConfig(n_low=n_low, n_high=n_high, alpha=alpha),
        defend=with_defense,
        out_dir=out_dir,
    )
    result = run_pipeline(config)
    doc = result.to_json_dict(config)
    if report_path:
        _write_json(doc, report_path)
    if as_json:
        _write_json(doc, None)
    else:
        click.echo(render_before_after(result.report))
        click.echo(
            f"splits {result.sizes['train']}/{result.sizes['val']}"
            f"/{result.sizes['test']}, "
            f"{result.total_substituted}/{result.total_eligible} letters "
            f"substituted in the test split"
        )


@cli.group("map")
def map_group():
    """Confusable map utilities."""


@map_group.command("validate")
@click.argument("map_file", type=click.Path(), required=False)
@_json_option
@_handle_errors
def map_validate(map_file, as_json):
    """Validate a map file (or the active default map)."""
    cmap = _resolve_map(map_file)
    violations = validate_map(cmap)
    errors = [v for v in violations if v.severity == "error"]
    if as_json:
        _write_json(
            {
                "schema": "hga/map-validation@1",
                "source": cmap.source_name,
                "letters": len(cmap.forward),
                "homographs": cmap.entry_count,
                "violations": [
                    {"severity": v.severity, "message": v.message,
                     "codepoint": v.codepoint}
                    for v in violations
                ],
            },
            None,
        )
    else:
        for v in violations:
            click.echo(str(v))
        click.echo(
            f"{cmap.source_name}: {len(cmap.forward)} letters, "
            f"{cmap.entry_count} homographs, "
            f"{len(errors)} error(s), {len(violations) - len(errors)} warning(s)"
        )
    if errors:
        sys.exit(2)


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@_map_option
@_handle_errors
def serve(host, port, map_path):
    """Run the HTTP service wrapping this toolkit."""
    import uvicorn

    from .service.app import create_app

    app = create_app(map_path=map_path or os.environ.get(MAP_ENV_VAR))
    uvicorn.run(app, host=host, port=port)


def main():
    cli()


if __name__ == "__main__":
    main()
