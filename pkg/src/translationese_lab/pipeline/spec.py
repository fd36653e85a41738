"""Backend specification files (TOML)."""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from ..errors import BadBackendSpec

TRANSPORTS = ("subprocess", "http")


@dataclass(frozen=True)
class BackendSpec:
    id: str
    transport: str
    command: tuple[str, ...] = ()
    url: str = ""
    timeout: float = 60.0
    batch_size: int = 8
    max_retries: int = 2
    max_inflight_batches: int = 4
    workdir: str = ""
    env: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise BadBackendSpec("backend id must be non-empty")
        if self.transport not in TRANSPORTS:
            raise BadBackendSpec(f"unknown transport {self.transport!r}")
        if self.transport == "subprocess" and not self.command:
            raise BadBackendSpec("subprocess transport requires a command")
        if self.transport == "http" and not self.url:
            raise BadBackendSpec("http transport requires a url")
        if self.timeout <= 0:
            raise BadBackendSpec(f"timeout must be > 0, got {self.timeout}")
        if self.batch_size < 1:
            raise BadBackendSpec(f"batch_size must be >= 1, got {self.batch_size}")


def load_backend_spec(path) -> BackendSpec:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"backend spec not found: {path}")
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise BadBackendSpec(f"{path}: {exc}")
    known = {
        "id", "transport", "command", "url", "timeout", "batch_size",
        "max_retries", "max_inflight_batches", "workdir", "env",
    }
    unknown = set(data) - known
    if unknown:
        raise BadBackendSpec(f"{path}: unknown keys {sorted(unknown)}")
    command = data.get("command", ())
    if isinstance(command, str):
        command = tuple(shlex.split(command))
    else:
        command = tuple(str(c) for c in command)
    try:
        return BackendSpec(
            id=str(data.get("id", "")),
            transport=str(data.get("transport", "")),
            command=command,
            url=str(data.get("url", "")),
            timeout=float(data.get("timeout", 60.0)),
            batch_size=int(data.get("batch_size", 8)),
            max_retries=int(data.get("max_retries", 2)),
            max_inflight_batches=int(data.get("max_inflight_batches", 4)),
            workdir=str(data.get("workdir", "")),
            env={str(k): str(v) for k, v in data.get("env", {}).items()},
        )
    except (TypeError, ValueError) as exc:
        raise BadBackendSpec(f"{path}: {exc}")
