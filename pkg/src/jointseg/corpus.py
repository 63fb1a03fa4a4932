"""Sentences, segmentations and BMES tag sequences.

A sentence is a ``str`` (one codepoint per character), a segmentation is a
list of non-empty word strings and a tag sequence is a list over ``TAGS``.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from ._io import atomic_write_text, read_utf8_lines
from .errors import InvalidInputError

TAGS = ("B", "M", "E", "S")

# tag -> tags allowed to follow it (None marks end of sequence)
_FOLLOW = {
    "B": {"M", "E"},
    "M": {"M", "E"},
    "E": {"B", "S", None},
    "S": {"B", "S", None},
}


def words_to_tags(words: Sequence[str]) -> list[str]:
    tags = []
    for word in words:
        n = len(word)
        if n == 0:
            raise InvalidInputError("segmentation contains an empty word")
        if n == 1:
            tags.append("S")
        else:
            tags.append("B")
            tags.extend("M" * (n - 2))
            tags.append("E")
    return tags


def tags_to_words(sent: str, tags: Sequence[str]) -> list[str]:
    """Invert :func:`words_to_tags`.

    Ill-formed sequences are repaired left to right: a tag that cannot extend
    the open word closes it and starts a new one (M opens, E/S stand alone).
    The result always joins back to ``sent``.
    """
    if len(sent) != len(tags):
        raise InvalidInputError(
            f"tag sequence length {len(tags)} != sentence length {len(sent)}"
        )
    words = []
    start = None  # start index of the open word
    for i, tag in enumerate(tags):
        if tag not in _FOLLOW:
            raise InvalidInputError(f"unknown tag {tag!r} at position {i}")
        if start is not None:
            if tag == "M":
                continue
            if tag == "E":
                words.append(sent[start : i + 1])
                start = None
                continue
            words.append(sent[start:i])
            start = None
        if tag in ("B", "M"):
            start = i
        else:
            words.append(sent[i])
    if start is not None:
        words.append(sent[start:])
    return words


def is_well_formed(tags: Sequence[str]) -> bool:
    prev = None
    for tag in tags:
        if tag not in _FOLLOW:
            return False
        if prev is None:
            if tag not in ("B", "S"):
                return False
        elif tag not in _FOLLOW[prev]:
            return False
        prev = tag
    return prev is None or None in _FOLLOW[prev]


def read_segmented_corpus(path) -> list[list[str]]:
    """Read a Bakeoff-style corpus: one sentence per line, whitespace between words."""
    segs = []
    for _, line in read_utf8_lines(path):
        words = line.split()
        if words:
            segs.append(words)
    return segs


def read_segmented_lines(path) -> list[list[str]]:
    """Like :func:`read_segmented_corpus` but blank lines are kept as empty segmentations."""
    return [line.split() for _, line in read_utf8_lines(path)]


def write_segmented_corpus(segs: Iterable[Sequence[str]], path) -> None:
    atomic_write_text(path, "".join(" ".join(words) + "\n" for words in segs))
