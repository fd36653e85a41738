"""Corpus-level translationese metrics.

All three metrics are pooled over the whole corpus, one denominator each:
type-token ratio is distinct case-folded forms over total tokens (only
pooling gives the familiar ~0.09 values at tens of thousands of tokens;
per-sentence averaging would not), cohesive-marker counts sum over
sentences, and POS frequencies are tag counts over total tagged tokens.

Token counts and TTR are deliberately computed over *all* tokens including
punctuation, to stay consistent with a tag inventory that includes PUNCT.

Counts and sums are additive across corpora; TTR is not (types collapse
across the concatenation), so never add TTRs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BadLexicon, EmptyCorpus, InvalidTag, UntaggedToken
from .postag.tags import UNIVERSAL_TAGS, is_valid_tag
from .textnorm import TOKENIZER_VERSION, TokenizedSentence


@dataclass(frozen=True)
class MarkerLexicon:
    """Lowercased marker token sequences, longest first."""

    markers: tuple[tuple[str, ...], ...]
    source: str

    def __post_init__(self):
        if not self.markers:
            raise BadLexicon(f"lexicon {self.source!r} is empty")
        seen = set()
        for seq in self.markers:
            if not seq or any(not t for t in seq):
                raise BadLexicon(f"lexicon {self.source!r} has an empty marker")
            if len(seq) > 5:
                raise BadLexicon(f"marker too long ({len(seq)} tokens): {' '.join(seq)}")
            if seq in seen:
                raise BadLexicon(f"duplicate marker: {' '.join(seq)}")
            seen.add(seq)
        assert list(self.markers) == sorted(self.markers, key=lambda s: (-len(s), s))

    def fingerprint(self) -> str:
        blob = "\n".join(" ".join(seq) for seq in self.markers).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:12]


def make_lexicon(phrases, source: str) -> MarkerLexicon:
    seqs = sorted(
        {tuple(p.casefold().split()) for p in phrases if p.strip()},
        key=lambda s: (-len(s), s),
    )
    return MarkerLexicon(markers=tuple(seqs), source=source)


def load_lexicon(path) -> MarkerLexicon:
    """UTF-8, one marker per line, '#' comments."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"lexicon file not found: {path}")
    phrases = []
    for line in path.read_text(encoding="utf-8").split("\n"):
        line = line.strip()
        if line and not line.startswith("#"):
            phrases.append(line)
    return make_lexicon(phrases, source=path.name)


def default_lexicon() -> MarkerLexicon:
    from importlib.resources import files

    text = files("translationese_lab.data").joinpath("markers.txt").read_text("utf-8")
    phrases = [l.strip() for l in text.split("\n") if l.strip() and not l.startswith("#")]
    return make_lexicon(phrases, source="default-cohesive-v1")


@dataclass
class MetricReport:
    corpus_name: str
    token_count: int
    type_count: int
    ttr: float
    cohesive_count: int
    avg_sentence_length: float
    sentence_count: int
    pos_freq: dict[str, float] | None = None
    tokenizer_version: str = TOKENIZER_VERSION
    lexicon_source: str = ""
    tagger_model: str = ""
    cohesive_breakdown: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MetricReport":
        return cls(**json.loads(text))


def ttr(sentences: list[TokenizedSentence]) -> tuple[int, int, float]:
    """(type_count, token_count, ratio) pooled over the corpus."""
    if not sentences:
        raise EmptyCorpus("TTR over empty corpus")
    types = set()
    tokens = 0
    for sent in sentences:
        tokens += len(sent.tokens)
        for tok in sent.tokens:
            types.add(tok.lowered)
    if tokens == 0:
        raise EmptyCorpus("TTR over corpus with no tokens")
    return len(types), tokens, len(types) / tokens


def count_cohesive(
    sentences: list[TokenizedSentence], lexicon: MarkerLexicon
) -> tuple[int, dict[str, int]]:
    """Total marker occurrences plus a per-marker breakdown.

    Matching is case-insensitive on token boundaries, longest match first,
    non-overlapping, scanning each sentence left to right.
    """
    by_first: dict[str, list[tuple[str, ...]]] = {}
    for seq in lexicon.markers:  # already longest-first
        by_first.setdefault(seq[0], []).append(seq)

    breakdown: dict[str, int] = {}
    total = 0
    for sent in sentences:
        lowered = [t.lowered for t in sent.tokens]
        i = 0
        n = len(lowered)
        while i < n:
            matched = None
            for seq in by_first.get(lowered[i], ()):
                if lowered[i : i + len(seq)] == list(seq):
                    matched = seq
                    break
            if matched is None:
                i += 1
            else:
                name = " ".join(matched)
                breakdown[name] = breakdown.get(name, 0) + 1
                total += 1
                i += len(matched)
    return total, dict(sorted(breakdown.items()))


def pos_frequencies(tagged_sentences: list[list[tuple[str, str]]]) -> dict[str, float]:
    """Relative frequency per tag over the pooled corpus; every tag present."""
    counts = dict.fromkeys(UNIVERSAL_TAGS, 0)
    total = 0
    for si, sent in enumerate(tagged_sentences):
        for wi, (form, t) in enumerate(sent):
            if t is None or t == "":
                raise UntaggedToken(str(si), wi)
            if not is_valid_tag(t):
                raise InvalidTag(t, location=f"sentence {si}, token {wi}")
            counts[t] += 1
            total += 1
    if total == 0:
        raise EmptyCorpus("no tagged tokens")
    return {t: counts[t] / total for t in UNIVERSAL_TAGS}


def length_stats(sentences: list[TokenizedSentence]) -> dict[str, float]:
    if not sentences:
        raise EmptyCorpus("length stats over empty corpus")
    token_count = sum(len(s.tokens) for s in sentences)
    return {
        "avg_sentence_length": token_count / len(sentences),
        "token_count": token_count,
        "sentence_count": len(sentences),
    }


def compute_report(
    corpus_name: str,
    sentences: list[TokenizedSentence],
    lexicon: MarkerLexicon,
    tagged_sentences: list[list[tuple[str, str]]] | None = None,
    tagger_model: str = "",
) -> MetricReport:
    type_count, token_count, ratio = ttr(sentences)
    cohesive_total, breakdown = count_cohesive(sentences, lexicon)
    lengths = length_stats(sentences)
    freqs = pos_frequencies(tagged_sentences) if tagged_sentences is not None else None
    return MetricReport(
        corpus_name=corpus_name,
        token_count=token_count,
        type_count=type_count,
        ttr=ratio,
        cohesive_count=cohesive_total,
        avg_sentence_length=lengths["avg_sentence_length"],
        sentence_count=int(lengths["sentence_count"]),
        pos_freq=freqs,
        lexicon_source=f"{lexicon.source}@{lexicon.fingerprint()}",
        tagger_model=tagger_model,
        cohesive_breakdown=breakdown,
    )
