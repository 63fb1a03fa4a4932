import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from jointseg.errors import AlignmentError, InvalidInputError
from jointseg.evaluate import f_score, percent, score, spans

from oracles import word_intervals


@pytest.mark.parametrize(
    "seg, expected",
    [(["ab", "c"], {(0, 2), (2, 3)}), (["a"], {(0, 1)}), ([], set())],
)
def test_spans(seg, expected):
    assert spans(seg) == expected


def test_identical():
    gold = [["a", "bc"], ["d"]]
    r = score(gold, gold)
    assert (r.precision, r.recall, r.f_score) == (1, 1, 1)
    assert r.per_line_mismatch == ()


def test_partial_match():
    gold, pred = [["a", "b", "cd"]], [["a", "bcd"]]
    g, p = word_intervals(gold[0]), word_intervals(pred[0])
    correct = len(set(g) & set(p))  # only (0, 1)
    assert correct == 1
    r = score(gold, pred)
    assert r.correct_words == 1 and r.gold_words == 3 and r.pred_words == 2
    assert r.precision == pytest.approx(1 / 2)
    assert r.recall == pytest.approx(1 / 3)
    assert r.f_score == pytest.approx(0.4)
    assert r.per_line_mismatch == (1,)


def test_repeated_words_counted_by_position():
    r = score([["a", "a", "a"]], [["a", "aa"]])
    assert r.correct_words == 1


def test_alignment_errors():
    with pytest.raises(AlignmentError) as info:
        score([["ab"], ["c"]], [["ab"], ["d"]])
    assert info.value.lineno == 2
    with pytest.raises(AlignmentError):
        score([["a"]], [])


@pytest.mark.parametrize(
    "p, r, f",
    [(0.9728, 0.9725, 0.9726), (0.8831, 0.8465, 0.8644)],
)
def test_f_score_reported_rows(p, r, f):
    assert abs(f_score(p, r) - f) <= 5e-5


def test_f_score_edges():
    assert f_score(0.5, 0.5) == 0.5
    assert f_score(0, 0) == 0
    with pytest.raises(InvalidInputError):
        f_score(1.2, 0.5)


@given(st.floats(0.001, 1), st.floats(0.001, 1))
def test_harmonic_bounds(p, r):
    f = f_score(p, r)
    assert min(p, r) - 1e-12 <= f <= max(p, r) + 1e-12
    assert f == pytest.approx(f_score(r, p))


seg_st = st.lists(st.integers(1, 4), min_size=1, max_size=8)


def cut(text, lengths):
    out, i = [], 0
    for L in lengths:
        if i >= len(text):
            break
        out.append(text[i : i + L])
        i += L
    if i < len(text):
        out.append(text[i:])
    return out


@given(st.lists(st.tuples(st.text("abc", min_size=1, max_size=12), seg_st, seg_st), min_size=1, max_size=5))
def test_symmetry_and_identity(lines):
    gold = [cut(t, a) for t, a, _ in lines]
    pred = [cut(t, b) for t, _, b in lines]
    fwd, bwd = score(gold, pred), score(pred, gold)
    assert fwd.precision == pytest.approx(bwd.recall)
    assert fwd.recall == pytest.approx(bwd.precision)
    assert fwd.f_score == pytest.approx(bwd.f_score)
    assert fwd.correct_words <= min(fwd.gold_words, fwd.pred_words)
    same = score(gold, gold)
    assert (same.precision, same.recall, same.f_score) == (1, 1, 1)


@pytest.mark.parametrize("ratio, text", [(1.0, "100.00"), (1 / 3, "33.33"), (0.4, "40.00"), (0.97265, "97.27"), (0.5, "50.00")])
def test_percent_half_up(ratio, text):
    assert percent(ratio) == text
