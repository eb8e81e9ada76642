"""Bridge to external classifiers speaking the hga-adapter/1 protocol.

The protocol is newline-delimited JSON over standard streams, so adapters
can be written in any language:

handshake   adapter -> harness, first stdout line:
            {"protocol": "hga-adapter/1", "labels": ["pos", "neg", ...]}
request     harness -> adapter, one line per sample:
            {"id": 0, "text": "..."}
response    adapter -> harness, one line per request, any order:
            {"id": 0, "label": "pos"}
            or, for a line the adapter could not handle:
            {"id": 0, "error": "why"}   (id null when unparseable)

Ids disambiguate out-of-order responses, so adapters are free to batch
internally; the harness pipelines all requests and reorders by id before
scoring. stderr is free-form logging and ignored here. A socket transport
would slot in behind the same client API but is not implemented.
"""

from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading

from .corpus import Corpus
from .errors import AdapterProtocolError
from .metrics import EvalResult, evaluate

PROTOCOL = "hga-adapter/1"
DEFAULT_TIMEOUT = 30.0

_EOF = object()


class AdapterClient:
    """Spawns an adapter process and speaks hga-adapter/1 with it.

    The handshake is read during construction; ``labels`` is the announced
    label set. Use as a context manager, or call :meth:`close`.
    """

    def __init__(
        self,
        command: str | list[str],
        timeout: float = DEFAULT_TIMEOUT,
    ):
        if isinstance(command, str):
            command = shlex.split(command)
        self._timeout = timeout
        self._proc = subprocess.Popen(
            command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            encoding="utf-8",
        )
        self._lines: queue.Queue = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self.labels: tuple[str, ...] = self._read_handshake()

    def _pump(self) -> None:
        for line in self._proc.stdout:
            self._lines.put(line)
        self._lines.put(_EOF)

    def _next_line(self, waiting_for: str) -> str:
        try:
            item = self._lines.get(timeout=self._timeout)
        except queue.Empty:
            raise AdapterProtocolError(
                f"timed out after {self._timeout}s waiting for {waiting_for}"
            ) from None
        if item is _EOF:
            raise AdapterProtocolError(
                f"adapter exited while the harness waited for {waiting_for}"
            )
        return item

    def _read_handshake(self) -> tuple[str, ...]:
        try:
            line = self._next_line("the handshake")
        except AdapterProtocolError:
            self.close()
            raise
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            self.close()
            raise AdapterProtocolError(
                f"handshake is not JSON: {line!r}"
            ) from exc
        if not isinstance(doc, dict) or doc.get("protocol") != PROTOCOL:
            self.close()
            raise AdapterProtocolError(
                f"expected protocol {PROTOCOL!r}, got {doc!r}"
            )
        labels = doc.get("labels")
        if (
            not isinstance(labels, list)
            or not labels
            or not all(isinstance(lab, str) for lab in labels)
        ):
            self.close()
            raise AdapterProtocolError(
                f"handshake must announce a non-empty label list, got {labels!r}"
            )
        return tuple(labels)

    def predict_batch(self, texts: list[str]) -> list[str]:
        """Send every text, collect every response, reorder by id.

        Raises :class:`AdapterProtocolError` on timeout, adapter death,
        an error response, a label outside the announced set, or a
        duplicate/unknown id; the message carries the completed/total
        progress count so aborted runs are diagnosable.
        """
        n = len(texts)
        try:
            for i, text in enumerate(texts):
                self._proc.stdin.write(
                    json.dumps({"id": i, "text": text}, ensure_ascii=False) + "\n"
                )
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise AdapterProtocolError(
                f"adapter closed its input: {exc}"
            ) from exc

        completed: dict[int, str] = {}
        while len(completed) < n:
            progress = f"response {len(completed)}/{n}"
            line = self._next_line(progress)
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise AdapterProtocolError(
                    f"response is not JSON ({progress}): {line!r}"
                ) from exc
            if not isinstance(doc, dict):
                raise AdapterProtocolError(
                    f"response is not an object ({progress}): {doc!r}"
                )
            if "error" in doc:
                raise AdapterProtocolError(
                    f"adapter error for id {doc.get('id')!r} ({progress}): "
                    f"{doc['error']}"
                )
            rid = doc.get("id")
            label = doc.get("label")
            if not isinstance(rid, int) or not 0 <= rid < n:
                raise AdapterProtocolError(
                    f"response id {rid!r} matches no outstanding request "
                    f"({progress})"
                )
            if rid in completed:
                raise AdapterProtocolError(
                    f"duplicate response for id {rid} ({progress})"
                )
            if label not in self.labels:
                raise AdapterProtocolError(
                    f"label {label!r} not in the announced set "
                    f"{list(self.labels)} (id {rid}, {progress})"
                )
            completed[rid] = label
        return [completed[i] for i in range(n)]

    def close(self) -> None:
        """End the session: close stdin, give the process a moment, kill it."""
        if self._proc.stdin and not self._proc.stdin.closed:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
        try:
            self._proc.wait(timeout=2)
        except subprocess.TimeoutExpired:
            self._proc.kill()
            self._proc.wait()

    def __enter__(self) -> "AdapterClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def eval_via_adapter(
    corpus: Corpus,
    adapter: AdapterClient | str | list[str],
    timeout: float = DEFAULT_TIMEOUT,
) -> EvalResult:
    """Evaluate a corpus with an external adapter; same arithmetic as eval.

    ``adapter`` may be an open client or a command to spawn for the call.
    The announced label set is the evaluation label set, so results are
    identical to the built-in path whenever the predictions are.
    """
    if isinstance(adapter, AdapterClient):
        preds = adapter.predict_batch(corpus.texts())
        labels = adapter.labels
    else:
        with AdapterClient(adapter, timeout=timeout) as client:
            preds = client.predict_batch(corpus.texts())
            labels = client.labels
    golds = [s.label for s in corpus.samples]
    return evaluate(golds, preds, labels)
