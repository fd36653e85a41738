"""Averaged-perceptron POS tagger over the 17-tag universal inventory.

Training is a plain averaged perceptron: greedy left-to-right decoding,
weight update on every wrong guess, lazily-accumulated averaging. All
randomness (per-epoch sentence shuffling) flows from the caller's seed, and
the model file format is canonical (sorted keys, length-prefixed fields,
big-endian floats), so identical (treebank, epochs, seed) produces
byte-identical model files.

Frequent words with a near-unambiguous tag bypass the perceptron through a
tag dictionary, which stabilizes closed-class items like PUNCT and DET.
"""

from __future__ import annotations

import random
import struct
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import EmptyTrainingSet, InvalidTag, LabError
from ..textnorm import TokenizedSentence
from .tags import UNIVERSAL_TAGS, is_valid_tag

MODEL_FORMAT_VERSION = 1
_MAGIC = b"APTAG"

# tagdict admission: words this frequent and this pure skip the perceptron
TAGDICT_MIN_COUNT = 20
TAGDICT_MIN_PURITY = 0.97

_START = ("-START-", "-START2-")
_END = ("-END-", "-END2-")


@dataclass
class TaggerModel:
    weights: dict[str, dict[str, float]] = field(default_factory=dict)
    tagdict: dict[str, str] = field(default_factory=dict)
    version: int = MODEL_FORMAT_VERSION
    seed: int = 0


def _features(i: int, word: str, context: list[str], prev: str, prev2: str) -> list[str]:
    """Feature keys for the token at padded position i (context includes padding)."""
    low = context[i]
    feats = [
        "bias",
        f"w={word}",
        f"lw={low}",
        f"suf1={low[-1:]}",
        f"suf2={low[-2:]}",
        f"suf3={low[-3:]}",
        f"first={low[:1]}",
        f"pt={prev}",
        f"pt2={prev2}|{prev}",
        f"pw={context[i - 1]}",
        f"nw={context[i + 1]}",
    ]
    if word[:1].isupper():
        feats.append("shape=cap")
    if any(c.isdigit() for c in word):
        feats.append("shape=digit")
    if "-" in word:
        feats.append("shape=hyphen")
    return feats


def _score_and_pick(weights: dict[str, dict[str, float]], feats: list[str]) -> str:
    scores = dict.fromkeys(UNIVERSAL_TAGS, 0.0)
    for f in feats:
        per_tag = weights.get(f)
        if per_tag:
            for t, w in per_tag.items():
                scores[t] += w
    # lexicographic tie-break keeps decoding platform-independent
    return max(sorted(scores), key=scores.__getitem__)


def _padded_context(words: list[str]) -> list[str]:
    return [_START[0], _START[1]] + [w.casefold() for w in words] + [_END[0], _END[1]]


def train(treebank: list[list[tuple[str, str]]], epochs: int, seed: int) -> TaggerModel:
    """Train on sentences of (word, tag) pairs. epochs >= 1."""
    if epochs < 1:
        raise LabError(f"epochs must be >= 1, got {epochs}")
    sentences = [s for s in treebank if s]
    if not sentences:
        raise EmptyTrainingSet("no training sentences")
    for si, sent in enumerate(sentences):
        for wi, (_, gold) in enumerate(sent):
            if not is_valid_tag(gold):
                raise InvalidTag(gold, location=f"sentence {si}, token {wi}")

    # tag dictionary for frequent unambiguous words
    counts: dict[str, Counter] = defaultdict(Counter)
    for sent in sentences:
        for word, gold in sent:
            counts[word.casefold()][gold] += 1
    tagdict = {}
    for word, tag_counts in counts.items():
        total = sum(tag_counts.values())
        tag, mode = tag_counts.most_common(1)[0]
        if total >= TAGDICT_MIN_COUNT and mode / total >= TAGDICT_MIN_PURITY:
            tagdict[word] = tag

    weights: dict[str, dict[str, float]] = {}
    totals: dict[tuple[str, str], float] = defaultdict(float)
    tstamps: dict[tuple[str, str], int] = defaultdict(int)
    instances = 0

    def upd(feat: str, tag: str, delta: float) -> None:
        key = (feat, tag)
        per_tag = weights.setdefault(feat, {})
        totals[key] += (instances - tstamps[key]) * per_tag.get(tag, 0.0)
        tstamps[key] = instances
        per_tag[tag] = per_tag.get(tag, 0.0) + delta

    rng = random.Random(seed)
    order = list(range(len(sentences)))
    for _ in range(epochs):
        rng.shuffle(order)
        for si in order:
            sent = sentences[si]
            words = [w for w, _ in sent]
            context = _padded_context(words)
            prev, prev2 = _START[0], _START[1]
            for i, (word, gold) in enumerate(sent):
                guess = tagdict.get(word.casefold())
                if guess is None:
                    feats = _features(i + 2, word, context, prev, prev2)
                    instances += 1
                    guess = _score_and_pick(weights, feats)
                    if guess != gold:
                        for f in feats:
                            upd(f, gold, 1.0)
                            upd(f, guess, -1.0)
                        guess = gold  # condition following context on the correction
                prev2, prev = prev, guess

    # finalize averages
    averaged: dict[str, dict[str, float]] = {}
    for feat, per_tag in weights.items():
        for tag, w in per_tag.items():
            key = (feat, tag)
            total = totals[key] + (instances - tstamps[key]) * w
            avg = total / instances if instances else 0.0
            if avg != 0.0:
                averaged.setdefault(feat, {})[tag] = avg
    return TaggerModel(weights=averaged, tagdict=tagdict, seed=seed)


def tag(model: TaggerModel, sentence: TokenizedSentence) -> list[str]:
    """One tag per token, greedy left to right. Deterministic."""
    words = sentence.surfaces
    if not words:
        return []
    context = _padded_context(words)
    tags: list[str] = []
    prev, prev2 = _START[0], _START[1]
    for i, word in enumerate(words):
        guess = model.tagdict.get(word.casefold())
        if guess is None:
            feats = _features(i + 2, word, context, prev, prev2)
            guess = _score_and_pick(model.weights, feats)
        tags.append(guess)
        prev2, prev = prev, guess
    return tags


# ---------------------------------------------------------------------------
# canonical model file

def _write_bytes(fh, data: bytes) -> None:
    fh.write(struct.pack(">I", len(data)))
    fh.write(data)


def _read_bytes(fh) -> bytes:
    raw = fh.read(4)
    if len(raw) != 4:
        raise LabError("truncated model file")
    (n,) = struct.unpack(">I", raw)
    data = fh.read(n)
    if len(data) != n:
        raise LabError("truncated model file")
    return data


def save_model(model: TaggerModel, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    flat = []
    for feat in sorted(model.weights):
        for t in sorted(model.weights[feat]):
            w = model.weights[feat][t]
            if w != 0.0:
                flat.append((feat, t, w))
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack(">IqI", model.version, model.seed, len(flat)))
        for feat, t, w in flat:
            _write_bytes(fh, feat.encode("utf-8"))
            _write_bytes(fh, t.encode("utf-8"))
            fh.write(struct.pack(">d", w))
        fh.write(struct.pack(">I", len(model.tagdict)))
        for word in sorted(model.tagdict):
            _write_bytes(fh, word.encode("utf-8"))
            _write_bytes(fh, model.tagdict[word].encode("utf-8"))


def load_model(path) -> TaggerModel:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"model file not found: {path}")
    with open(path, "rb") as fh:
        if fh.read(len(_MAGIC)) != _MAGIC:
            raise LabError(f"{path} is not a tagger model file")
        version, seed, n_weights = struct.unpack(">IqI", fh.read(16))
        if version != MODEL_FORMAT_VERSION:
            raise LabError(f"unsupported model format version {version}")
        weights: dict[str, dict[str, float]] = {}
        for _ in range(n_weights):
            feat = _read_bytes(fh).decode("utf-8")
            t = _read_bytes(fh).decode("utf-8")
            (w,) = struct.unpack(">d", fh.read(8))
            weights.setdefault(feat, {})[t] = w
        (n_dict,) = struct.unpack(">I", fh.read(4))
        tagdict = {}
        for _ in range(n_dict):
            word = _read_bytes(fh).decode("utf-8")
            t = _read_bytes(fh).decode("utf-8")
            if not is_valid_tag(t):
                raise InvalidTag(t, location=f"tagdict entry {word!r}")
            tagdict[word] = t
    return TaggerModel(weights=weights, tagdict=tagdict, version=version, seed=seed)
