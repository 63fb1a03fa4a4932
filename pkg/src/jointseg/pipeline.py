"""The joint method: MMSEG tags become column 1 of the CRF input.

Training grids have three columns per character: the character, the tag
MMSEG assigns when segmenting the raw sentence, and the gold tag.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from ._io import atomic_write_text, read_utf8_lines
from .corpus import tags_to_words, words_to_tags
from .crf import CrfModel, viterbi
from .errors import GridFormatError, InvalidInputError
from .lexicon import Lexicon
from .mmseg import mmseg_tags
from .template import TokenGrid

FEATURE_COLUMNS = 2  # char, MMSEG tag


def make_grid(lex: Lexicon, sent: str, freedom: Optional[Mapping[str, float]] = None,
              gold: Optional[Sequence[str]] = None) -> TokenGrid:
    cols = (tuple(sent), tuple(mmseg_tags(lex, sent, freedom)))
    return TokenGrid(cols, tuple(gold) if gold is not None else None)


def make_training_grids(
    corpus: Sequence[Sequence[str]],
    lex: Lexicon,
    freedom: Optional[Mapping[str, float]] = None,
) -> list[TokenGrid]:
    if not corpus:
        raise InvalidInputError("empty corpus")
    # MMSEG sees only the raw sentence, as it will at segmentation time
    return [make_grid(lex, "".join(words), freedom, words_to_tags(words)) for words in corpus]


def segment_line(model: CrfModel, lex: Lexicon, line: str,
                 freedom: Optional[Mapping[str, float]] = None) -> list[str]:
    """Segment one raw line; whitespace in the line is treated as a fixed word boundary."""
    words = []
    for piece in line.split():
        tags = viterbi(model, make_grid(lex, piece, freedom))
        words.extend(tags_to_words(piece, tags))
    return words


def segment_text(
    model: CrfModel,
    lex: Lexicon,
    raw_lines: Iterable[str],
    freedom: Optional[Mapping[str, float]] = None,
) -> list[list[str]]:
    """One segmentation per input line; blank lines give empty segmentations."""
    if model.n_columns != FEATURE_COLUMNS:
        raise InvalidInputError(
            f"model was trained on {model.n_columns} feature column(s); "
            f"segmentation builds {FEATURE_COLUMNS} (char, MMSEG tag)"
        )
    return [segment_line(model, lex, line, freedom) for line in raw_lines]


def format_training_file(grids: Iterable[TokenGrid]) -> str:
    parts = []
    for grid in grids:
        parts.extend(" ".join(row) + "\n" for row in grid.rows())
        parts.append("\n")
    return "".join(parts)


def write_training_file(grids: Iterable[TokenGrid], path) -> None:
    """CRF++ format: one token per line, columns space-separated, blank line after each sentence."""
    atomic_write_text(path, format_training_file(grids))


def read_training_file(path, has_gold: bool = True) -> list[TokenGrid]:
    """Read a CRF++ training file; the last column is the gold label when ``has_gold``."""
    grids = []
    rows: list[list[str]] = []
    width = None
    for lineno, line in read_utf8_lines(path):
        fields = line.split()
        if not fields:
            if rows:
                grids.append(TokenGrid.from_rows(rows, has_gold))
                rows = []
            continue
        if width is None:
            width = len(fields)
            if has_gold and width < 2:
                raise GridFormatError(path, lineno, "need at least one feature column and a label")
        elif len(fields) != width:
            raise GridFormatError(path, lineno, f"expected {width} columns, found {len(fields)}")
        rows.append(fields)
    if rows:
        grids.append(TokenGrid.from_rows(rows, has_gold))
    return grids
