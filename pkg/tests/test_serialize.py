import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jointseg.crf import CrfModel, load_model, save_model, train, viterbi
from jointseg.crf.serialize import dumps_model, loads_model
from jointseg.errors import ModelFormatError
from jointseg.pipeline import make_training_grids
from jointseg.template import TokenGrid, preset

from crf_helpers import random_grid, random_model


def assert_same_model(a, b):
    assert a.alphabet == b.alphabet
    assert a.templates == b.templates
    assert a.index == b.index
    assert a.n_columns == b.n_columns
    assert a.weights.tobytes() == b.weights.tobytes()


@pytest.fixture(scope="module")
def toy_model(toy_corpus, toy_lexicon):
    return train(make_training_grids(toy_corpus, toy_lexicon), preset("exp4"))


def test_round_trip_decodes_identically(tmp_path, toy_model, toy_corpus, toy_lexicon):
    path = tmp_path / "m.model"
    save_model(toy_model, path)
    loaded = load_model(path)
    assert_same_model(toy_model, loaded)
    for g in make_training_grids(toy_corpus, toy_lexicon):
        grid = TokenGrid(g.columns)
        assert viterbi(loaded, grid) == viterbi(toy_model, grid)


def test_header(tmp_path, toy_model):
    path = tmp_path / "m.model"
    save_model(toy_model, path)
    assert path.read_text(encoding="utf-8").splitlines()[:2] == ["JOINTSEG-CRF-MODEL", "version 1"]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(1e-3, 1e3))
def test_random_round_trip(seed, scale):
    rng = np.random.default_rng(seed)
    grids = [random_grid(rng, int(rng.integers(1, 6))) for _ in range(3)]
    model = random_model(rng, grids, scale=scale)
    model.weights[0] = 5e-324  # subnormal survives repr
    model.meta["note"] = "x\ty"
    assert_same_model(model, loads_model(dumps_model(model)))


def test_bad_magic(tmp_path, toy_model):
    text = dumps_model(toy_model).replace("JOINTSEG-CRF-MODEL", "CRFPP-MODEL", 1)
    with pytest.raises(ModelFormatError, match="magic"):
        loads_model(text)


def test_bad_version(toy_model):
    with pytest.raises(ModelFormatError, match="version"):
        loads_model(dumps_model(toy_model).replace("version 1", "version 9", 1))


@pytest.mark.parametrize("frac", [0.0, 0.1, 0.5, 0.9, 0.999])
def test_truncated(tmp_path, toy_model, frac):
    text = dumps_model(toy_model)
    path = tmp_path / "t.model"
    path.write_text(text[: int(len(text) * frac)], encoding="utf-8")
    with pytest.raises(ModelFormatError):
        load_model(path)


def test_garbage_bytes(tmp_path):
    path = tmp_path / "g.model"
    path.write_bytes(b"\x00\xff\xfe garbage")
    with pytest.raises(ModelFormatError):
        load_model(path)


def test_corrupt_weight(toy_model):
    lines = dumps_model(toy_model).split("\n")
    i = next(k for k, line in enumerate(lines) if line.startswith("[features]")) + 1
    lines[i] = "0.1 nope 0.3 0.4\t" + lines[i].split("\t", 1)[1]
    with pytest.raises(ModelFormatError):
        loads_model("\n".join(lines))


def test_save_is_deterministic(tmp_path, toy_model):
    a, b = tmp_path / "a", tmp_path / "b"
    save_model(toy_model, a)
    save_model(toy_model, b)
    assert a.read_bytes() == b.read_bytes()
