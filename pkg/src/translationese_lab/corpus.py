"""Corpus ingestion and alignment.

Corpora are UTF-8 text files, one sentence per line (LF or CRLF). A line may
carry an explicit id as ``id<TAB>text``; otherwise line k gets id ``Lk``.
Corpora are immutable after load and can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import DuplicateId, IdMismatch, LabError, MalformedCorpus

ROLES = ("translation", "original", "system_output")


@dataclass(frozen=True)
class Corpus:
    name: str
    role: str
    sentences: tuple[tuple[str, str], ...]  # (id, raw text), order preserved
    system_id: str | None = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise LabError(f"unknown corpus role {self.role!r}")
        if self.role == "system_output" and not self.system_id:
            raise LabError("system_output corpus requires a system_id")
        ids = [sid for sid, _ in self.sentences]
        if len(ids) != len(set(ids)):
            seen = set()
            dup = next(i for i in ids if i in seen or seen.add(i))
            raise LabError(f"duplicate sentence id {dup!r} in corpus {self.name!r}")

    def __len__(self) -> int:
        return len(self.sentences)

    @property
    def ids(self) -> list[str]:
        return [sid for sid, _ in self.sentences]

    def id_set(self) -> frozenset[str]:
        return frozenset(sid for sid, _ in self.sentences)

    def text_of(self, sent_id: str) -> str:
        return dict(self.sentences)[sent_id]


@dataclass
class AlignedSet:
    """Baseline translations plus id-aligned system outputs.

    The originally-English reference corpus, when present, is a distinct
    non-parallel set and is never id-checked against the baseline.
    """

    baseline: Corpus
    reference: Corpus | None = None
    outputs: dict[str, Corpus] = field(default_factory=dict)

    def add_output(self, output: Corpus) -> None:
        self.outputs[align(self.baseline, output).system_id] = output


def load_corpus(path, role: str, name: str, system_id: str | None = None) -> Corpus:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"corpus file not found: {path}")
    sentences = []
    seen = set()
    raw = path.read_text(encoding="utf-8")
    lines = raw.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline, not an empty sentence
    for k, line in enumerate(lines, start=1):
        line = line.rstrip("\r").rstrip()
        if not line:
            raise MalformedCorpus(path, k, "blank line")
        if "\t" in line:
            sent_id, text = line.split("\t", 1)
            sent_id, text = sent_id.strip(), text.rstrip()
            if not sent_id or not text.strip():
                raise MalformedCorpus(path, k, "empty id or text field")
        else:
            sent_id, text = f"L{k}", line
        if sent_id in seen:
            raise DuplicateId(path, k, sent_id)
        seen.add(sent_id)
        sentences.append((sent_id, text))
    return Corpus(name=name, role=role, sentences=tuple(sentences), system_id=system_id)


def save_corpus(corpus: Corpus, path) -> None:
    """Write as id<TAB>text lines; load_corpus(save_corpus(c)) preserves (id, text) pairs."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for sent_id, text in corpus.sentences:
            fh.write(f"{sent_id}\t{text}\n")


def align(baseline: Corpus, output: Corpus) -> Corpus:
    """Check id alignment; return ``output`` reordered to baseline order.

    Raises IdMismatch with the symmetric difference when the id sets differ.
    """
    base_ids = baseline.id_set()
    out_ids = output.id_set()
    if base_ids != out_ids:
        raise IdMismatch(missing=base_ids - out_ids, extra=out_ids - base_ids)
    by_id = dict(output.sentences)
    reordered = tuple((sid, by_id[sid]) for sid, _ in baseline.sentences)
    return Corpus(
        name=output.name,
        role=output.role,
        sentences=reordered,
        system_id=output.system_id,
    )
