from .tags import UNIVERSAL_TAGS, is_valid_tag
from .tagger import TaggerModel, load_model, save_model, tag, train
from .pretagged import load_pretagged, save_pretagged

__all__ = [
    "UNIVERSAL_TAGS",
    "is_valid_tag",
    "TaggerModel",
    "train",
    "tag",
    "save_model",
    "load_model",
    "load_pretagged",
    "save_pretagged",
]
