"""Drive a rewriting backend over the newline-delimited JSON protocol.

Protocol (subprocess transport, one JSON object per line on stdin/stdout):

    -> {"op": "hello"}
    <- {"op": "hello", "backend": "<id>", "version": "<v>"}
    -> {"op": "rewrite", "id": "<sid>", "text": "..."}
    <- {"op": "result", "id": "<sid>", "text": "...",
        "intermediate": "(optional PENMAN)", "error": "(optional)"}

The HTTP transport POSTs the same JSON bodies to a single endpoint.

Dispatch sends batches of requests with a bounded number of batches in
flight; responses may arrive in any order. Every successful response is
written to the content-addressed cache *before* the record is committed, so
a killed run resumes from the cache and the backend is never asked twice for
the same (backend, version, text) triple. Failures are retried per sentence;
after max_retries the sentence is recorded as failed and excluded from the
output corpus.
"""

from __future__ import annotations

import json
import queue
import subprocess
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass

from ..corpus import Corpus
from ..errors import (
    BackendUnavailable,
    InvalidIntermediate,
    PenmanError,
    ProtocolViolation,
)
from ..penman import parse_penman
from ..textnorm import tokenize
from .cache import ResponseCache, cache_key
from .spec import BackendSpec

_EOF = {"__eof__": True}


@dataclass
class ReductionRecord:
    id: str
    input_text: str
    output_text: str
    backend_id: str
    cache_hit: bool
    latency_ms: float
    intermediate: str | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class RunResult:
    output: Corpus
    records: list[ReductionRecord]
    failed: dict[str, str]  # id -> reason
    backend_version: str
    cache_hits: int
    dispatched: int

    def summary(self) -> dict:
        return {
            "backend_id": self.output.system_id,
            "backend_version": self.backend_version,
            "input_sentences": len(self.records) + len(self.failed),
            "output_sentences": len(self.output),
            "cache_hits": self.cache_hits,
            "dispatched": self.dispatched,
            "failed_ids": sorted(self.failed),
        }


# ---------------------------------------------------------------------------
# transports

class _SubprocessTransport:
    def __init__(self, spec: BackendSpec):
        self.spec = spec
        self.queue: queue.Queue = queue.Queue()
        self.proc: subprocess.Popen | None = None
        self.version = ""
        self._start()

    def _start(self) -> None:
        try:
            self.proc = subprocess.Popen(
                self.spec.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                cwd=self.spec.workdir or None,
                env={**__import__("os").environ, **self.spec.env} if self.spec.env else None,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise BackendUnavailable(f"cannot start {self.spec.command!r}: {exc}")
        self.queue = queue.Queue()
        reader = threading.Thread(target=self._read_loop, args=(self.proc,), daemon=True)
        reader.start()
        self._handshake()

    def _read_loop(self, proc: subprocess.Popen) -> None:
        for line in proc.stdout:
            line = line.strip()
            if not line:
                continue
            try:
                self.queue.put(json.loads(line))
            except json.JSONDecodeError:
                self.queue.put({"__badline__": line[:200]})
        self.queue.put(dict(_EOF))

    def _handshake(self) -> None:
        self.send({"op": "hello"})
        reply = self.recv(deadline=time.monotonic() + self.spec.timeout)
        if reply is None or reply.get("__eof__"):
            raise BackendUnavailable(f"backend {self.spec.id!r} did not answer handshake")
        if reply.get("op") != "hello" or not reply.get("version"):
            raise ProtocolViolation(f"bad handshake reply: {reply!r}")
        if reply.get("backend") != self.spec.id:
            raise ProtocolViolation(
                f"spec says backend {self.spec.id!r} but worker reports {reply.get('backend')!r}"
            )
        version = str(reply["version"])
        if self.version and version != self.version:
            raise ProtocolViolation(
                f"backend version changed across restart: {self.version!r} -> {version!r}"
            )
        self.version = version

    def send(self, message: dict) -> None:
        if self.proc is None or self.proc.stdin is None:
            raise BackendUnavailable("worker process is not running")
        try:
            self.proc.stdin.write(json.dumps(message) + "\n")
            self.proc.stdin.flush()
        except (BrokenPipeError, OSError):
            pass  # EOF marker will surface via the reader thread

    def recv(self, deadline: float) -> dict | None:
        remaining = deadline - time.monotonic()
        try:
            return self.queue.get(timeout=max(remaining, 0.001))
        except queue.Empty:
            return None

    def restart(self) -> None:
        self.close()
        self._start()

    def close(self) -> None:
        if self.proc is not None:
            try:
                if self.proc.stdin:
                    self.proc.stdin.close()
                self.proc.terminate()
                self.proc.wait(timeout=5)
            except (OSError, subprocess.TimeoutExpired):
                self.proc.kill()
            self.proc = None


class _HttpTransport:
    """Same bodies over a single POST endpoint; each send runs in a thread."""

    def __init__(self, spec: BackendSpec):
        self.spec = spec
        self.queue: queue.Queue = queue.Queue()
        self._sem = threading.Semaphore(max(spec.max_inflight_batches * spec.batch_size, 1))
        reply = self._post({"op": "hello"})
        if reply.get("op") != "hello" or not reply.get("version"):
            raise ProtocolViolation(f"bad handshake reply: {reply!r}")
        if reply.get("backend") != spec.id:
            raise ProtocolViolation(
                f"spec says backend {spec.id!r} but worker reports {reply.get('backend')!r}"
            )
        self.version = str(reply["version"])

    def _post(self, message: dict) -> dict:
        body = json.dumps(message).encode("utf-8")
        request = urllib.request.Request(
            self.spec.url, data=body, headers={"Content-Type": "application/json"}
        )
        try:
            with urllib.request.urlopen(request, timeout=self.spec.timeout) as resp:
                return json.loads(resp.read().decode("utf-8"))
        except (urllib.error.URLError, OSError, json.JSONDecodeError) as exc:
            raise BackendUnavailable(f"POST {self.spec.url} failed: {exc}")

    def send(self, message: dict) -> None:
        def work():
            try:
                self.queue.put(self._post(message))
            except BackendUnavailable:
                self.queue.put({"op": "result", "id": message.get("id"), "error": "transport error"})
            finally:
                self._sem.release()

        self._sem.acquire()
        threading.Thread(target=work, daemon=True).start()

    def recv(self, deadline: float) -> dict | None:
        remaining = deadline - time.monotonic()
        try:
            return self.queue.get(timeout=max(remaining, 0.001))
        except queue.Empty:
            return None

    def restart(self) -> None:
        pass  # stateless transport

    def close(self) -> None:
        pass


def _open_transport(spec: BackendSpec):
    if spec.transport == "subprocess":
        return _SubprocessTransport(spec)
    return _HttpTransport(spec)


# ---------------------------------------------------------------------------
# dispatch

def run_pipeline(corpus: Corpus, spec: BackendSpec, cache_dir) -> RunResult:
    """Rewrite every sentence of ``corpus`` through the backend.

    Returns an output corpus id-aligned to the input (minus failed ids, which
    are listed in the result), one record per succeeded sentence, and cache
    statistics. Rerunning with a warm cache dispatches nothing.
    """
    cache = ResponseCache(cache_dir)
    transport = _open_transport(spec)
    version = transport.version

    records: dict[str, ReductionRecord] = {}
    failed: dict[str, str] = {}
    keys = {sid: cache_key(spec.id, version, text) for sid, text in corpus.sentences}
    texts = dict(corpus.sentences)

    # sentences with identical text share a cache key and are dispatched once
    waiters: dict[str, list[str]] = {}
    for sid, text in corpus.sentences:
        response = cache.get(keys[sid])
        if response is not None:
            records[sid] = _record_from_response(sid, text, spec.id, response, cache_hit=True)
        else:
            waiters.setdefault(keys[sid], []).append(sid)

    def commit(key: str, response: dict, first_latency: float) -> None:
        for i, sid in enumerate(waiters[key]):
            record = _record_from_response(sid, texts[sid], spec.id, response, cache_hit=i > 0)
            if i == 0:
                record.latency_ms = first_latency
            records[sid] = record

    dispatched = 0
    todo = [sids[0] for sids in waiters.values()]  # representative sid per key
    attempts = dict.fromkeys(todo, 0)
    inflight: dict[str, tuple[float, float]] = {}  # sid -> (sent_at, deadline)

    def give_up(sid: str, reason: str) -> None:
        if attempts[sid] > spec.max_retries:
            for waiter in waiters[keys[sid]]:
                failed[waiter] = reason
        else:
            todo.append(sid)

    try:
        while todo or inflight:
            window = spec.max_inflight_batches * spec.batch_size
            while todo and len(inflight) + spec.batch_size <= window:
                batch = [todo.pop(0) for _ in range(min(spec.batch_size, len(todo)))]
                now = time.monotonic()
                deadline = now + spec.timeout
                for sid in batch:
                    attempts[sid] += 1
                    dispatched += 1
                    transport.send({"op": "rewrite", "id": sid, "text": texts[sid]})
                    inflight[sid] = (now, deadline)
            if not inflight:
                continue
            next_deadline = min(d for _, d in inflight.values())
            message = transport.recv(next_deadline)

            if message is None:
                now = time.monotonic()
                expired = [sid for sid, (_, d) in inflight.items() if d <= now]
                for sid in expired:
                    del inflight[sid]
                    give_up(sid, f"timeout after {spec.timeout}s")
                continue

            if message.get("__eof__"):
                for sid in list(inflight):
                    del inflight[sid]
                    give_up(sid, "worker exited mid-batch")
                if todo or inflight:
                    transport.restart()
                    if transport.version != version:
                        raise ProtocolViolation("backend version changed across restart")
                continue

            if "__badline__" in message:
                raise ProtocolViolation(f"response is not valid JSON: {message['__badline__']!r}")
            if message.get("op") != "result":
                raise ProtocolViolation(f"unexpected op {message.get('op')!r}")
            sid = message.get("id")
            if sid not in inflight:
                if sid in records or sid in failed or sid in attempts:
                    continue  # stale duplicate from a retried batch
                raise ProtocolViolation(f"response for unknown id {sid!r}")

            sent_at, _ = inflight.pop(sid)
            error = message.get("error")
            text_out = message.get("text")
            if error or not text_out:
                give_up(sid, str(error) if error else "empty output text")
                continue
            latency = round((time.monotonic() - sent_at) * 1000, 3)
            cache.put(keys[sid], message)
            commit(keys[sid], message, latency)
    finally:
        transport.close()

    ordered = [records[sid] for sid, _ in corpus.sentences if sid in records]
    output = Corpus(
        name=f"{corpus.name}+{spec.id}",
        role="system_output",
        system_id=spec.id,
        sentences=tuple((r.id, r.output_text) for r in ordered),
    )
    return RunResult(
        output=output,
        records=ordered,
        failed=failed,
        backend_version=version,
        cache_hits=sum(1 for r in ordered if r.cache_hit),
        dispatched=dispatched,
    )


def _record_from_response(
    sid: str, input_text: str, backend_id: str, response: dict, cache_hit: bool
) -> ReductionRecord:
    return ReductionRecord(
        id=sid,
        input_text=input_text,
        output_text=str(response.get("text", "")),
        backend_id=backend_id,
        cache_hit=cache_hit,
        latency_ms=0.0 if cache_hit else float(response.get("latency_ms", 0.0)),
        intermediate=response.get("intermediate"),
    )


# ---------------------------------------------------------------------------
# intermediate validation

DEGENERATE_INPUT_TOKENS = 5  # inputs longer than this should not parse to one node


def validate_intermediate(record: ReductionRecord) -> list[str]:
    """Quality warnings for a record carrying a PENMAN intermediate."""
    if record.intermediate is None:
        raise InvalidIntermediate(record.id, "record has no intermediate")
    try:
        graph = parse_penman(record.intermediate)
    except PenmanError as exc:
        raise InvalidIntermediate(record.id, f"unparseable PENMAN: {exc}")
    warnings = []
    input_len = len(tokenize(record.input_text).tokens) if record.input_text.strip() else 0
    if graph.node_count() < 2 and input_len > DEGENERATE_INPUT_TOKENS:
        warnings.append(
            f"DegenerateGraph: {input_len}-token input parsed to {graph.node_count()} node(s)"
        )
    if not record.output_text.strip():
        warnings.append("EmptyGeneration: output text is empty")
    return warnings
