"""Word lists for MMSEG, stored in a character trie for prefix lookup."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from ._io import read_utf8_lines
from .errors import EmptyLexiconError, InvalidInputError

_END = ""  # terminal marker; never a valid one-codepoint key


class Lexicon:
    """Immutable set of words with ``prefixes_of`` in O(max_word_len) per position."""

    def __init__(self, words: Iterable[str] = (), source_names: Iterable[str] = ()):
        self._words = frozenset(w for w in words if w)
        self.source_names = tuple(source_names)
        self.max_word_len = max(map(len, self._words), default=0)
        root: dict = {}
        for word in self._words:
            node = root
            for ch in word:
                node = node.setdefault(ch, {})
            node[_END] = True
        self._root = root

    @property
    def words(self) -> frozenset[str]:
        return self._words

    def __len__(self):
        return len(self._words)

    def __contains__(self, word) -> bool:
        return word in self._words

    def contains(self, word: str) -> bool:
        return word in self._words

    def __iter__(self):
        return iter(sorted(self._words))

    def __eq__(self, other):
        if not isinstance(other, Lexicon):
            return NotImplemented
        return self._words == other._words

    def __hash__(self):
        return hash(self._words)

    def __repr__(self):
        return f"Lexicon({len(self)} words, max_word_len={self.max_word_len})"

    def merge(self, other: "Lexicon") -> "Lexicon":
        return Lexicon(self._words | other._words, self.source_names + other.source_names)

    def prefixes_of(self, sent: str, pos: int) -> list[int]:
        """Ascending lengths ``L`` with ``sent[pos:pos+L]`` in the lexicon."""
        if not 0 <= pos < len(sent):
            raise InvalidInputError(f"position {pos} out of range for length {len(sent)}")
        out = []
        node = self._root
        for i in range(pos, min(len(sent), pos + self.max_word_len)):
            node = node.get(sent[i])
            if node is None:
                break
            if _END in node:
                out.append(i - pos + 1)
        return out


def parse_lexicon_lines(lines: Iterable[str]) -> list[str]:
    """First whitespace-delimited field of each non-blank, non-comment line."""
    words = []
    for line in lines:
        if line.startswith("#"):
            continue
        fields = line.split()
        if not fields:
            continue
        words.append(fields[0])
    return words


def load_lexicon(paths: Iterable) -> Lexicon:
    """Union of the given lexicon files. Trailing columns (frequencies) are ignored."""
    words: set[str] = set()
    names = []
    for path in paths:
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"lexicon not found: {path}")
        words.update(parse_lexicon_lines(line for _, line in read_utf8_lines(path)))
        names.append(path.name)
    if not words:
        raise EmptyLexiconError(f"no words in lexicon files: {', '.join(names) or '(none)'}")
    return Lexicon(words, names)
