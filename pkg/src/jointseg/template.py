"""CRF++-style feature templates.

A template line is ``U<id>:<body>`` (unigram feature) or ``B<id>`` (label
transition). ``%x[row,col]`` in the body is replaced by the token ``row``
positions away from the current one, taken from column ``col``. Rows outside
the sentence become ``_B-1``, ``_B-2``, ... before the start and ``_B+1``,
``_B+2``, ... after the end.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import ConfigurationError, InvalidInputError, TemplateParseError

UNIGRAM = "U"
TRANSITION = "B"

_MACRO = re.compile(r"%x\[\s*([+-]?\d+)\s*,\s*(\d+)\s*\]")

Part = Union[str, tuple]  # literal text or (row_offset, col)


@dataclass(frozen=True)
class Template:
    id: str
    kind: str
    parts: tuple[Part, ...]

    @property
    def atoms(self) -> tuple[tuple[int, int], ...]:
        return tuple(p for p in self.parts if isinstance(p, tuple))

    def render(self) -> str:
        return "".join(p if isinstance(p, str) else f"%x[{p[0]},{p[1]}]" for p in self.parts)

    def expand(self, grid: "TokenGrid", pos: int) -> str:
        return expand(self, grid, pos)


@dataclass(frozen=True)
class TemplateSet:
    templates: tuple[Template, ...]
    name: str = "custom"

    def __len__(self):
        return len(self.templates)

    def __iter__(self):
        return iter(self.templates)

    @property
    def unigrams(self) -> tuple[Template, ...]:
        return tuple(t for t in self.templates if t.kind == UNIGRAM)

    @property
    def transitions(self) -> tuple[Template, ...]:
        return tuple(t for t in self.templates if t.kind == TRANSITION)

    @property
    def max_col(self) -> int:
        return max((col for t in self.templates for _, col in t.atoms), default=-1)

    def validate(self, n_columns: int) -> None:
        """Check every referenced column exists in grids with ``n_columns`` feature columns."""
        if self.max_col >= n_columns:
            bad = next(t for t in self.templates if any(c >= n_columns for _, c in t.atoms))
            raise ConfigurationError(
                f"template {bad.id!r} references column {self.max_col} but the data has "
                f"{n_columns} feature column(s) (valid: 0..{n_columns - 1})"
            )

    def render(self) -> str:
        return "".join(t.render() + "\n" for t in self.templates)


@dataclass(frozen=True)
class TokenGrid:
    """One sentence as feature columns (column-major) plus an optional gold column.

    Column 0 holds the characters and column 1 the MMSEG tags in grids built
    by :mod:`jointseg.pipeline`.
    """

    columns: tuple[tuple[str, ...], ...]
    gold: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if not self.columns:
            raise InvalidInputError("a token grid needs at least one column")
        n = len(self.columns[0])
        if any(len(c) != n for c in self.columns) or (self.gold is not None and len(self.gold) != n):
            raise InvalidInputError("all grid columns must have the same length")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[str]], has_gold: bool = True) -> "TokenGrid":
        cols = tuple(zip(*rows)) if rows else ()
        if has_gold:
            return cls(tuple(cols[:-1]), tuple(cols[-1]))
        return cls(tuple(cols))

    def __len__(self):
        return len(self.columns[0])

    @property
    def n_columns(self) -> int:
        return len(self.columns)

    def rows(self) -> list[tuple[str, ...]]:
        cols = self.columns + ((self.gold,) if self.gold is not None else ())
        return list(zip(*cols))


def _parse_body(body: str, lineno: int) -> tuple[Part, ...]:
    parts: list[Part] = []
    i = 0
    while True:
        j = body.find("%x", i)
        if j < 0:
            if i < len(body):
                parts.append(body[i:])
            return tuple(parts)
        m = _MACRO.match(body, j)
        if m is None:
            raise TemplateParseError(lineno, f"malformed macro at {body[j:]!r}")
        if j > i:
            parts.append(body[i:j])
        parts.append((int(m.group(1)), int(m.group(2))))
        i = m.end()


def parse_templates(text: str, name: str = "custom") -> TemplateSet:
    templates = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        kind = line[0]
        if kind not in (UNIGRAM, TRANSITION):
            raise TemplateParseError(lineno, f"template must start with U or B: {line!r}")
        tid = line.split(":", 1)[0]
        parts = _parse_body(line, lineno)
        tpl = Template(tid, kind, parts)
        if kind == UNIGRAM and not tpl.atoms:
            raise TemplateParseError(lineno, f"unigram template {tid!r} has no %x macro")
        if kind == TRANSITION and tpl.atoms:
            raise TemplateParseError(lineno, "transition templates with %x macros are not supported")
        if tid in seen:
            raise TemplateParseError(lineno, f"duplicate template id {tid!r}")
        seen.add(tid)
        templates.append(tpl)
    return TemplateSet(tuple(templates), name)


def load_templates(path) -> TemplateSet:
    path = Path(path)
    return parse_templates(path.read_text(encoding="utf-8"), name=path.name)


def _token(grid: TokenGrid, pos: int, row: int, col: int) -> str:
    idx = pos + row
    n = len(grid)
    if idx < 0:
        return f"_B{idx}"
    if idx >= n:
        return f"_B+{idx - n + 1}"
    return grid.columns[col][idx]


def expand(tpl: Template, grid: TokenGrid, pos: int) -> str:
    if not 0 <= pos < len(grid):
        raise InvalidInputError(f"position {pos} out of range for length {len(grid)}")
    return "".join(p if isinstance(p, str) else _token(grid, pos, p[0], p[1]) for p in tpl.parts)


def expand_all(tpl: Template, grid: TokenGrid) -> list[str]:
    """``[expand(tpl, grid, pos) for pos in range(len(grid))]``, computed column-wise."""
    n = len(grid)
    fmt = "".join(p.replace("{", "{{").replace("}", "}}") if isinstance(p, str) else "{}" for p in tpl.parts)
    if not tpl.atoms:
        return [fmt] * n
    shifted = []
    for row, col in tpl.atoms:
        column = grid.columns[col]
        if row < 0:
            k = min(-row, n)
            head = [f"_B{i}" for i in range(row, row + k)]
            shifted.append(head + list(column[: n - k]))
        elif row > 0:
            k = min(row, n)
            tail = [f"_B+{i}" for i in range(row - k + 1, row + 1)]
            shifted.append(list(column[k:]) + tail)
        else:
            shifted.append(column)
    return list(map(fmt.format, *shifted))


# Column 0 = character (C), column 1 = MMSEG tag (T).
_CHAR_LEVEL = """\
# character unigrams: C-1, C0, C1
U00:%x[-1,0]
U01:%x[0,0]
U02:%x[1,0]
# character bigrams: C-1C0, C0C1
U03:%x[-1,0]/%x[0,0]
U04:%x[0,0]/%x[1,0]
# character jump: C-1C1
U05:%x[-1,0]/%x[1,0]
"""

_TAG_LEVEL = """\
# tag unigrams: T-1, T0, T1
U10:%x[-1,1]
U11:%x[0,1]
U12:%x[1,1]
# tag bigrams: T-1T0, T0T1
U13:%x[-1,1]/%x[0,1]
U14:%x[0,1]/%x[1,1]
# tag jump: T-1T1
U15:%x[-1,1]/%x[1,1]
"""

_CHAR_TAG_BIGRAMS = """\
# character-tag bigrams: C-1T0, C0T0, C1T0
U20:%x[-1,0]/%x[0,1]
U21:%x[0,0]/%x[0,1]
U22:%x[1,0]/%x[0,1]
"""

# Reconstructed: trigrams of the current character, a neighbour and an MMSEG tag.
_CHAR_TAG_TRIGRAMS = """\
# character-character-tag trigrams (reconstructed)
U30:%x[-1,0]/%x[0,0]/%x[0,1]
U31:%x[0,0]/%x[1,0]/%x[0,1]
U32:%x[-1,0]/%x[0,0]/%x[-1,1]
U33:%x[0,0]/%x[1,0]/%x[1,1]
"""

# Reconstructed: two- and three-character windows paired with the current tag.
_WIDE_WINDOW = """\
# wide character windows with the current tag (reconstructed)
U40:%x[-2,0]/%x[0,1]
U41:%x[2,0]/%x[0,1]
U42:%x[-2,0]/%x[-1,0]/%x[0,1]
U43:%x[1,0]/%x[2,0]/%x[0,1]
U44:%x[-3,0]/%x[-2,0]/%x[-1,0]/%x[0,1]
U45:%x[1,0]/%x[2,0]/%x[3,0]/%x[0,1]
"""

_TRANSITION = """\
# label bigram
B
"""

PRESET_SOURCES = {
    "exp1": _CHAR_LEVEL + _TRANSITION,
    "exp2": _CHAR_LEVEL + _TAG_LEVEL + _TRANSITION,
    "exp3": _CHAR_LEVEL + _TAG_LEVEL + _CHAR_TAG_TRIGRAMS + _TRANSITION,
    "exp4": _CHAR_LEVEL + _TAG_LEVEL + _CHAR_TAG_BIGRAMS + _TRANSITION,
    "exp5": _CHAR_LEVEL + _TAG_LEVEL + _CHAR_TAG_BIGRAMS + _WIDE_WINDOW + _TRANSITION,
}
DEFAULT_PRESET = "exp4"


def preset(name: str) -> TemplateSet:
    try:
        source = PRESET_SOURCES[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown preset {name!r}; valid presets: {', '.join(sorted(PRESET_SOURCES))}"
        ) from None
    return parse_templates(source, name=name)
