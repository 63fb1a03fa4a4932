import pytest
from hypothesis import given
from hypothesis import strategies as st

from jointseg.errors import ConfigurationError, InvalidInputError, TemplateParseError
from jointseg.template import (
    PRESET_SOURCES,
    TokenGrid,
    expand,
    expand_all,
    parse_templates,
    preset,
)

from oracles import feature_strings

GRID = TokenGrid((("a", "b"), ("B", "E")))


def test_parse_unigram():
    ts = parse_templates("U00:%x[-1,0]\n")
    assert len(ts) == 1
    (t,) = ts.templates
    assert t.kind == "U" and t.id == "U00" and t.atoms == ((-1, 0),)


def test_parse_transition():
    ts = parse_templates("B\n")
    assert len(ts.transitions) == 1 and ts.transitions[0].atoms == ()


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("U00:%x[-1,0\n", 1),
        ("# c\n\nU00:%x[a,0]\n", 3),
        ("U00:%x[0,-1]\n", 1),
        ("U00:%x[0,0]\nU00:%x[1,0]\n", 2),
        ("U01:plain\n", 1),
        ("X00:%x[0,0]\n", 1),
        ("B00:%x[0,0]\n", 1),
    ],
)
def test_parse_errors(text, lineno):
    with pytest.raises(TemplateParseError) as info:
        parse_templates(text)
    assert info.value.lineno == lineno


def test_expand_examples():
    assert expand(parse_templates("U02:%x[0,0]").templates[0], GRID, 0) == "U02:a"
    assert expand(parse_templates("U10:%x[-1,0]/%x[0,0]").templates[0], GRID, 1) == "U10:a/b"
    assert expand(parse_templates("U03:%x[1,1]").templates[0], GRID, 1) == "U03:_B+1"


def test_expand_sentinels_crfpp():
    t = parse_templates("U00:%x[-2,0]/%x[2,0]").templates[0]
    # CRF++ names sentinels by distance past the edge
    assert [expand(t, GRID, i) for i in range(2)] == ["U00:_B-2/_B+1", "U00:_B-1/_B+2"]


def test_expand_range():
    with pytest.raises(InvalidInputError):
        expand(parse_templates("U0:%x[0,0]").templates[0], GRID, 2)


def test_validate_columns():
    ts = parse_templates("U0:%x[0,2]\n")
    with pytest.raises(ConfigurationError, match="column 2"):
        ts.validate(2)
    ts.validate(3)


@pytest.mark.parametrize("name, n_unigram", [("exp1", 6), ("exp2", 12), ("exp3", 16), ("exp4", 15), ("exp5", 21)])
def test_preset_counts(name, n_unigram):
    ts = preset(name)
    assert len(ts.unigrams) == n_unigram
    assert len(ts.transitions) == 1
    assert ts.name == name


def test_exp4_is_the_feature_table():
    atoms = {t.atoms for t in preset("exp4").unigrams}
    C = lambda r: (r, 0)  # noqa: E731
    T = lambda r: (r, 1)  # noqa: E731
    assert atoms == {
        (C(-1),), (C(0),), (C(1),),
        (C(-1), C(0)), (C(0), C(1)),
        (C(-1), C(1)),
        (T(-1),), (T(0),), (T(1),),
        (T(-1), T(0)), (T(0), T(1)),
        (T(-1), T(1)),
        (C(-1), T(0)), (C(0), T(0)), (C(1), T(0)),
    }


def test_exp1_character_level_only():
    assert all(col == 0 for t in preset("exp1").unigrams for _, col in t.atoms)


def test_unknown_preset():
    with pytest.raises(ConfigurationError, match="exp1, exp2, exp3, exp4, exp5"):
        preset("exp9")


@pytest.mark.parametrize("name", sorted(PRESET_SOURCES))
def test_render_round_trip(name):
    ts = preset(name)
    again = parse_templates(ts.render(), name=name)
    assert again == ts


grid_st = st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        st.lists(st.sampled_from("abc{}"), min_size=n, max_size=n),
        st.lists(st.sampled_from("BMES"), min_size=n, max_size=n),
    )
)


@given(grid_st, st.sampled_from(sorted(PRESET_SOURCES)))
def test_expand_all_total_and_matches_reference(cols, name):
    grid = TokenGrid((tuple(cols[0]), tuple(cols[1])))
    ts = preset(name)
    per_pos = [feature_strings(ts, grid, pos) for pos in range(len(grid))]
    for k, tpl in enumerate(ts.unigrams):
        assert expand_all(tpl, grid) == [expand(tpl, grid, p) for p in range(len(grid))]
        assert expand_all(tpl, grid) == [row[k] for row in per_pos]


def test_literal_braces_survive():
    t = parse_templates("U0:{%x[0,0]}").templates[0]
    assert expand_all(t, GRID) == ["U0:{a}", "U0:{b}"]


def test_ids_prefix_features():
    ts = preset("exp5")
    seen = {}
    grid = TokenGrid((tuple("abab"), tuple("BEBE")))
    for tpl in ts.unigrams:
        for f in expand_all(tpl, grid):
            assert seen.setdefault(f, tpl.id) == tpl.id


def test_grid_rows():
    g = TokenGrid.from_rows([("a", "B", "B"), ("b", "E", "E")])
    assert g.columns == (("a", "b"), ("B", "E")) and g.gold == ("B", "E")
    assert g.rows() == [("a", "B", "B"), ("b", "E", "E")]
    with pytest.raises(InvalidInputError):
        TokenGrid((("a",), ("B", "E")))
