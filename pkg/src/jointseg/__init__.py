"""Chinese word segmentation with MMSEG tags as an extra CRF feature column."""

__version__ = "0.1.0"

from .corpus import TAGS, read_segmented_corpus, tags_to_words, words_to_tags, write_segmented_corpus
from .evaluate import EvalReport, f_score, score
from .lexicon import Lexicon, load_lexicon
from .mmseg import FreedomTable, mmseg_segment, mmseg_tags
from .template import TemplateSet, TokenGrid, parse_templates, preset

__all__ = [
    "TAGS",
    "EvalReport",
    "FreedomTable",
    "Lexicon",
    "TemplateSet",
    "TokenGrid",
    "f_score",
    "load_lexicon",
    "mmseg_segment",
    "mmseg_tags",
    "parse_templates",
    "preset",
    "read_segmented_corpus",
    "score",
    "tags_to_words",
    "words_to_tags",
    "write_segmented_corpus",
]
