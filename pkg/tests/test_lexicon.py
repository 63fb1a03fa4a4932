import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jointseg.errors import EmptyLexiconError, InvalidInputError
from jointseg.lexicon import Lexicon, load_lexicon, parse_lexicon_lines


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_load_basic(tmp_path):
    lex = load_lexicon([write(tmp_path, "a.dic", "ab\nabc\n")])
    assert lex.words == {"ab", "abc"}
    assert lex.max_word_len == 3
    assert lex.source_names == ("a.dic",)


def naive_first_field(line):
    # hand parser: characters up to the first whitespace, after skipping leading blanks
    i = 0
    while i < len(line) and line[i].isspace():
        i += 1
    j = i
    while j < len(line) and not line[j].isspace():
        j += 1
    return line[i:j]


@pytest.mark.parametrize("line", ["ab 1435", "ab\t1435\tn", "  ab  7", "ab"])
def test_first_field_rule(tmp_path, line):
    lex = load_lexicon([write(tmp_path, "f.dic", line + "\n")])
    assert lex.words == {naive_first_field(line)} == {"ab"}


def test_union(tmp_path):
    lex = load_lexicon([write(tmp_path, "1.dic", "a\n"), write(tmp_path, "2.dic", "a\nb\n")])
    assert lex.words == {"a", "b"}


def test_comments_and_blanks():
    assert parse_lexicon_lines(["# header", "", "  ", "词语 5", "#词"]) == ["词语"]


def test_empty_lexicon_error(tmp_path):
    with pytest.raises(EmptyLexiconError):
        load_lexicon([write(tmp_path, "e.dic", "# nothing\n\n")])


def test_missing_file(tmp_path):
    with pytest.raises(OSError, match="lexicon not found"):
        load_lexicon([tmp_path / "nope.dic"])


@pytest.mark.parametrize("pos, expected", [(0, [2, 3]), (1, [1]), (3, [])])
def test_prefixes_of(pos, expected):
    lex = Lexicon({"ab", "abc", "b"})
    assert lex.prefixes_of("abcd", pos) == expected


@pytest.mark.parametrize("pos", [-1, 4])
def test_prefixes_of_range(pos):
    with pytest.raises(InvalidInputError):
        Lexicon({"ab"}).prefixes_of("abcd", pos)


def test_contains():
    assert Lexicon({"ab"}).contains("ab")
    assert not Lexicon({"ab"}).contains("a")
    assert not Lexicon().contains("")
    assert "" not in Lexicon({"ab"})


words = st.lists(st.text(alphabet="abcd", min_size=1, max_size=4), max_size=12)


@settings(max_examples=300)
@given(words, st.text(alphabet="abcde", min_size=1, max_size=12), st.data())
def test_prefixes_match_naive_scan(ws, text, data):
    pos = data.draw(st.integers(0, len(text) - 1))
    naive = [L for L in range(1, len(text) - pos + 1) if text[pos : pos + L] in set(ws)]
    assert Lexicon(ws).prefixes_of(text, pos) == naive


@given(words, words)
def test_merge_matches_joint_load(tmp_path_factory, a, b):
    d = tmp_path_factory.mktemp("lex")
    pa = write(d, "a.dic", "".join(w + "\n" for w in a) or "#\n")
    pb = write(d, "b.dic", "".join(w + "\n" for w in b) or "#\n")
    if not a and not b:
        return
    joint = load_lexicon([pa, pb])
    merged = Lexicon(a).merge(Lexicon(b))
    assert joint == merged
    assert merged == Lexicon(b).merge(Lexicon(a))
    assert merged.merge(merged) == merged
    assert merged.max_word_len == max(map(len, a + b))
