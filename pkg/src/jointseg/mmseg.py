"""Complex MMSEG: three-word chunks disambiguated by a four-rule cascade.

Rules, each applied to the survivors of the previous one:

1. largest total length
2. largest average word length
3. smallest variance of word lengths
4. largest sum of morphemic freedom over single-character words

Remaining ties go to the chunk with the longest first word, then to the
earliest chunk in enumeration order. Only the first word of the winning
chunk is committed before moving on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from ._io import read_utf8_lines
from .corpus import words_to_tags
from .errors import InvalidInputError
from .lexicon import Lexicon

MAX_CHUNK_WORDS = 3


class FreedomTable(dict):
    """Single character -> non-negative freedom score; unknown characters score 0."""

    def __missing__(self, key):
        return 0.0


def load_freedom(path) -> FreedomTable:
    """Read ``char<TAB>score`` lines. Blank and ``#`` lines are skipped."""
    table = FreedomTable()
    for lineno, line in read_utf8_lines(path):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or len(fields[0]) != 1:
            raise InvalidInputError(f"{path}:{lineno}: expected 'char<TAB>score'")
        try:
            score = float(fields[1])
        except ValueError:
            raise InvalidInputError(f"{path}:{lineno}: bad score {fields[1]!r}") from None
        if not score >= 0 or math.isinf(score):
            raise InvalidInputError(f"{path}:{lineno}: score must be finite and >= 0")
        table[fields[0]] = score
    return table


@dataclass(frozen=True)
class Chunk:
    words: tuple[str, ...]
    freedom: float = 0.0

    @property
    def word_lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.words)

    @property
    def total_len(self) -> int:
        return sum(len(w) for w in self.words)

    @property
    def avg_len(self) -> float:
        return self.total_len / len(self.words)

    @property
    def variance(self) -> float:
        # integer numerator keeps equal variances bit-identical
        n = len(self.words)
        total = self.total_len
        sumsq = sum(len(w) ** 2 for w in self.words)
        return (n * sumsq - total * total) / (n * n)


def chunk_freedom(words: Sequence[str], table: Optional[Mapping[str, float]]) -> float:
    if not table:
        return 0.0
    return math.fsum(table.get(w, 0.0) for w in words if len(w) == 1)


def _candidate_lengths(lex: Lexicon, sent: str, pos: int) -> list[int]:
    lens = lex.prefixes_of(sent, pos)
    if not lens or lens[0] != 1:
        lens.insert(0, 1)
    return lens


def _chunk_lengths(lex, sent, pos, cache=None):
    n = len(sent)

    def cands(p):
        if cache is None:
            return _candidate_lengths(lex, sent, p)
        c = cache.get(p)
        if c is None:
            c = cache[p] = _candidate_lengths(lex, sent, p)
        return c

    out = []
    for l1 in cands(pos):
        p1 = pos + l1
        out.append((l1,))
        if p1 >= n:
            continue
        for l2 in cands(p1):
            p2 = p1 + l2
            out.append((l1, l2))
            if p2 >= n:
                continue
            for l3 in cands(p2):
                out.append((l1, l2, l3))
    return out


def _make_chunks(sent, pos, lengths, freedom):
    chunks = []
    for lens in lengths:
        words = []
        p = pos
        for k in lens:
            words.append(sent[p : p + k])
            p += k
        chunks.append(Chunk(tuple(words), chunk_freedom(words, freedom)))
    return chunks


def gen_chunks(
    lex: Lexicon, sent: str, pos: int, freedom: Optional[Mapping[str, float]] = None
) -> list[Chunk]:
    """All chunks of one to three words starting at ``pos``.

    Each word is a lexicon match or a single character; a single character is
    always a candidate. Chunks are listed depth first, shorter words first,
    each prefix chunk before its extensions.
    """
    if not 0 <= pos < len(sent):
        raise InvalidInputError(f"position {pos} out of range for length {len(sent)}")
    return _make_chunks(sent, pos, _chunk_lengths(lex, sent, pos), freedom)


def _survivors(chunks, key):
    best = max(key(c) for c in chunks)
    return [c for c in chunks if key(c) == best]


def pick_chunk(
    chunks: Sequence[Chunk], freedom: Optional[Mapping[str, float]] = None
) -> Chunk:
    if not chunks:
        raise InvalidInputError("no chunks to choose from")
    if freedom is not None:
        chunks = [Chunk(c.words, chunk_freedom(c.words, freedom)) for c in chunks]
    survivors = list(chunks)
    for key in (
        lambda c: c.total_len,
        lambda c: c.avg_len,
        lambda c: -c.variance,
        lambda c: c.freedom,
        lambda c: len(c.words[0]),
    ):
        if len(survivors) == 1:
            break
        survivors = _survivors(survivors, key)
    return survivors[0]


def mmseg_segment(
    lex: Lexicon, sent: str, freedom: Optional[Mapping[str, float]] = None
) -> list[str]:
    if not sent:
        raise InvalidInputError("cannot segment an empty sentence")
    words = []
    cache: dict[int, list[int]] = {}
    pos = 0
    while pos < len(sent):
        chunks = _make_chunks(sent, pos, _chunk_lengths(lex, sent, pos, cache), freedom)
        first = pick_chunk(chunks).words[0]
        words.append(first)
        pos += len(first)
    return words


def mmseg_tags(
    lex: Lexicon, sent: str, freedom: Optional[Mapping[str, float]] = None
) -> list[str]:
    return words_to_tags(mmseg_segment(lex, sent, freedom))
