"""Read/write tagged sentences in the 10-column tab-separated interchange format.

Only columns 2 (form) and 4 (universal tag) are consulted; the other columns
are passed through as written and regenerated as underscores on save. Blank
lines separate sentences; "#" lines are comments (dropped on save).
"""

from __future__ import annotations

from pathlib import Path

from ..errors import InvalidTag, PretaggedFormatError
from .tags import is_valid_tag

N_COLUMNS = 10


def load_pretagged(path) -> list[list[tuple[str, str]]]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"pretagged file not found: {path}")
    sentences: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []
    for line_no, line in enumerate(path.read_text(encoding="utf-8").split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != N_COLUMNS:
            raise PretaggedFormatError(path, line_no, f"expected {N_COLUMNS} columns, got {len(cols)}")
        form, upos = cols[1], cols[3]
        if not form:
            raise PretaggedFormatError(path, line_no, "empty form column")
        if not is_valid_tag(upos):
            raise InvalidTag(upos, location=f"{path}:{line_no}")
        current.append((form, upos))
    if current:
        sentences.append(current)
    return sentences


def save_pretagged(sentences: list[list[tuple[str, str]]], path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for sent in sentences:
            for i, (form, upos) in enumerate(sent, start=1):
                cols = [str(i), form, "_", upos] + ["_"] * 6
                fh.write("\t".join(cols) + "\n")
            fh.write("\n")
