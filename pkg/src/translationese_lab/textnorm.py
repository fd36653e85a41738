"""Deterministic tokenization and case normalization.

Every corpus statistic in this package counts tokens produced here, so the
segmentation rules are fixed and versioned (TOKENIZER_VERSION). The scheme
is Treebank-flavoured:

  * split on whitespace;
  * detach leading and trailing punctuation/symbol characters as separate
    tokens (runs of ``.`` or ``-`` stay grouped, e.g. ``...`` and ``--``);
  * split contractions at the clitic boundary (``don't`` -> ``do n't``,
    ``he's`` -> ``he 's``);
  * keep numbers with internal separators (``3.88``, ``1,000``) and
    hyphenated compounds (``well-known``) as single tokens.

No character is ever dropped or rewritten: joining the tokens recovers all
non-whitespace characters of the input, and re-tokenizing the space-joined
token list is a fixed point.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from .errors import EmptySentence

TOKENIZER_VERSION = "treebank-lite/1"

# Clitic suffixes split off per Treebank convention. Checked case-insensitively;
# "won't"/"can't" yield "wo n't"/"ca n't" like the original sed script.
_CLITICS = ("n't", "'s", "'m", "'d", "'ll", "'re", "'ve")

_NUMBER_RE = re.compile(r"[0-9]+(?:[.,][0-9]+)*")


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def _punct_run(chunk: str, start: int) -> str:
    """Leading punctuation token at ``start``: a run of identical '.' or '-', else one char."""
    ch = chunk[start]
    if ch in ".-":
        end = start
        while end < len(chunk) and chunk[end] == ch:
            end += 1
        run = chunk[start:end]
        if len(run) >= 2:
            return run
    return ch


def _trailing_punct_run(chunk: str) -> str:
    ch = chunk[-1]
    if ch in ".-":
        start = len(chunk)
        while start > 0 and chunk[start - 1] == ch:
            start -= 1
        run = chunk[start:]
        if len(run) >= 2:
            return run
    return ch


def _is_atomic(chunk: str) -> bool:
    if len(chunk) == 1:
        return True
    low = chunk.casefold()
    if low in _CLITICS:
        return True
    if _NUMBER_RE.fullmatch(chunk):
        return True
    if len(set(chunk)) == 1 and chunk[0] in ".-":
        return True
    return False


def _split_chunk(chunk: str) -> list[str]:
    head: list[str] = []
    tail: list[str] = []  # collected right-to-left
    while chunk:
        if _is_atomic(chunk):
            head.append(chunk)
            chunk = ""
            break
        if _is_punct_char(chunk[0]):
            piece = _punct_run(chunk, 0)
            head.append(piece)
            chunk = chunk[len(piece):]
            continue
        if _is_punct_char(chunk[-1]):
            piece = _trailing_punct_run(chunk)
            tail.append(piece)
            chunk = chunk[: -len(piece)]
            continue
        low = chunk.casefold()
        clitic = next(
            (c for c in _CLITICS if low.endswith(c) and len(chunk) > len(c)), None
        )
        if clitic is not None:
            tail.append(chunk[-len(clitic):])
            chunk = chunk[: -len(clitic)]
            continue
        head.append(chunk)
        break
    return head + tail[::-1]


@dataclass(frozen=True)
class Token:
    surface: str
    lowered: str
    index: int

    def __post_init__(self):
        assert self.surface and not any(c.isspace() for c in self.surface)
        assert self.lowered == self.surface.casefold()


@dataclass(frozen=True)
class TokenizedSentence:
    id: str
    tokens: tuple[Token, ...]

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def joined(self) -> str:
        return " ".join(t.surface for t in self.tokens)


def tokenize(text: str, sent_id: str = "") -> TokenizedSentence:
    """Segment one raw sentence. Raises EmptySentence if nothing remains after trim."""
    if not text.strip():
        raise EmptySentence(f"sentence {sent_id!r} is empty")
    surfaces: list[str] = []
    for chunk in text.split():
        surfaces.extend(_split_chunk(chunk))
    tokens = tuple(
        Token(surface=s, lowered=s.casefold(), index=i) for i, s in enumerate(surfaces)
    )
    return TokenizedSentence(id=sent_id, tokens=tokens)


def casefold_types(tokens) -> set[str]:
    """Distinct case-folded forms of a token sequence (accepts Token or str items)."""
    out = set()
    for tok in tokens:
        out.add(tok.lowered if isinstance(tok, Token) else str(tok).casefold())
    return out
