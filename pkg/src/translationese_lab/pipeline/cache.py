"""Content-addressed response cache.

One file per response, named by the hex key, holding the worker's response
JSON verbatim, so the cache can be inspected and diffed with ordinary tools.
Writes go through a temp file + rename: a killed run never leaves a torn
cache entry, which is what makes rerun-to-resume safe.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path


def cache_key(backend_id: str, backend_version: str, input_text: str) -> str:
    """sha256 over the three fields, each length-prefixed so field boundaries
    can never be confused ("ab","c" and "a","bc" hash differently)."""
    h = hashlib.sha256()
    for part in (backend_id, backend_version, input_text):
        data = part.encode("utf-8")
        h.update(len(data).to_bytes(8, "big"))
        h.update(data)
    return h.hexdigest()


class ResponseCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / key

    def get(self, key: str) -> dict | None:
        path = self._path(key)
        try:
            raw = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            return None  # torn entry from a pre-rename crash; treat as miss

    def put(self, key: str, response: dict) -> None:
        path = self._path(key)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(json.dumps(response, sort_keys=True), encoding="utf-8")
        os.replace(tmp, path)

    def __contains__(self, key: str) -> bool:
        return self._path(key).is_file()
