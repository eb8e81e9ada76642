"""Deterministic stub adapter for exercising the hga-adapter/1 protocol.

Run as ``python -m hga.stub_adapter``. Three prediction modes:

--model PATH      serve a saved nb-model JSON file (announces its labels)
--constant LABEL  always answer LABEL (announce --labels)
--lookup PATH     answer from a JSON {text: label} table (echo-gold fixture)

plus misbehavior knobs used by the protocol tests: --reverse-batch K
buffers K requests and answers them in reverse order, --delay S sleeps
before each response, --die-after N exits abruptly after N responses.
Malformed request lines get an error response with the offending id when
one can be recovered, null otherwise; the adapter keeps serving.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .classifier import NBModel, predict
from .errors import TrainingError

PROTOCOL = "hga-adapter/1"


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")
    sys.stdout.flush()


def _build_predictor(args) -> tuple[list[str], "callable"]:
    if args.model:
        try:
            model = NBModel.load(args.model)
        except (OSError, TrainingError, json.JSONDecodeError, KeyError) as exc:
            print(f"stub_adapter: cannot load model: {exc}", file=sys.stderr)
            sys.exit(3)
        return list(model.labels), lambda text: predict(model, text)[0]
    if args.lookup:
        try:
            table = json.loads(open(args.lookup, encoding="utf-8").read())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"stub_adapter: cannot load lookup: {exc}", file=sys.stderr)
            sys.exit(3)
        labels = args.labels or list(dict.fromkeys(table.values()))
        return labels, lambda text: table.get(text, labels[0])
    if args.constant is not None:
        if not args.labels:
            print("stub_adapter: --constant needs --labels", file=sys.stderr)
            sys.exit(3)
        return args.labels, lambda text: args.constant
    print("stub_adapter: pick one of --model/--constant/--lookup",
          file=sys.stderr)
    sys.exit(3)


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(prog="hga.stub_adapter")
    parser.add_argument("--model")
    parser.add_argument("--constant")
    parser.add_argument("--lookup")
    parser.add_argument("--labels", type=lambda s: s.split(","), default=None)
    parser.add_argument("--reverse-batch", type=int, default=1)
    parser.add_argument("--delay", type=float, default=0.0)
    parser.add_argument("--die-after", type=int, default=None)
    args = parser.parse_args(argv)

    labels, predictor = _build_predictor(args)
    _emit({"protocol": PROTOCOL, "labels": labels})

    sent = 0
    pending: list[dict] = []

    def respond(doc: dict) -> None:
        nonlocal sent
        if args.delay:
            time.sleep(args.delay)
        _emit(doc)
        sent += 1
        if args.die_after is not None and sent >= args.die_after:
            sys.exit(1)

    def flush_pending() -> None:
        for doc in reversed(pending):
            respond(doc)
        pending.clear()

    for line in sys.stdin:
        if not line.strip():
            continue
        rid = None
        try:
            req = json.loads(line)
            rid = req.get("id") if isinstance(req, dict) else None
            text = req["text"]
            if not isinstance(rid, int) or not isinstance(text, str):
                raise TypeError("id must be an int and text a string")
        except (json.JSONDecodeError, TypeError, KeyError) as exc:
            respond({"id": rid if isinstance(rid, int) else None,
                     "error": f"malformed request: {exc}"})
            continue
        pending.append({"id": rid, "label": predictor(text)})
        if len(pending) >= max(args.reverse_batch, 1):
            flush_pending()
    flush_pending()


if __name__ == "__main__":
    main()
