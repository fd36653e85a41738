"""The closed 17-tag universal part-of-speech inventory."""

UNIVERSAL_TAGS = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)

_TAG_SET = frozenset(UNIVERSAL_TAGS)


def is_valid_tag(tag: str) -> bool:
    return tag in _TAG_SET
